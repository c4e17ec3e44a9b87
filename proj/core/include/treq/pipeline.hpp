#ifndef TREQ_PIPELINE_HPP_
#define TREQ_PIPELINE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treq/affine_engine.hpp"
#include "treq/group_output.hpp"
#include "treq/invariant_engine.hpp"
#include "treq/transducer.hpp"

namespace treq {

struct PipelineOptions {
    /// auto | string | unary | abelian | f1 | f2 | matrix
    std::string mode = "auto";
    /// auto | affine | invariant
    std::string engine = "auto";
    TwinBudget budget;
    /// > 0 switches the affine engine to the randomized modular check.
    int prime_trials = 0;
    uint64_t seed = 1;
    std::optional<Dtta> relative_to;  // over the input alphabet
    std::optional<MatrixInterp> interp;
};

/// Complete, serializable decision result.
struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::string mode;      // resolved interpretation
    std::string engine;    // domain | affine | modular | monadic | invariant
    std::string pipeline;  // unary | unarize | binarize-unarize | abelian | f1 | f2 | matrix
    uint64_t seed = 0;
    uint64_t prime = 0;  // failing prime of a modular counterexample
    int degree = 0;      // invariant certificate degree
    int depth = 0;       // last d reached by the twin loop

    std::optional<Tree> witness;  // over the original input alphabet
    std::string witness_text;
    std::string output_left, output_right;

    /// Invariant certificate: (state name, canonical generator texts).
    std::vector<std::pair<std::string, std::vector<std::string>>> cert_invariant;
    /// Affine certificate: (state name, inserted vectors with generating
    /// trees over the transformed input alphabet).
    std::vector<std::pair<std::string, std::vector<std::pair<std::vector<Rat>, std::string>>>>
        cert_affine;
    std::vector<std::pair<std::string, int>> basis_dims;

    bool equivalent() const { return kind == VerdictKind::Equivalent; }
    int exit_code() const {
        switch (kind) {
            case VerdictKind::Equivalent: return 0;
            case VerdictKind::NotEquivalent: return 1;
            case VerdictKind::Unknown: return 2;
        }
        return 4;
    }
};

/// Full decision pipeline: domain comparison (absolute checks), the
/// transformations the interpretation requires (letter projections,
/// binarization, unarization, matrix semantics), then engine dispatch.
Verdict check_equivalence(const Transducer& M1, const Transducer& M2,
                          const PipelineOptions& opts);

/// Equivalence of two possibly partial transducers of matching mode
/// (string pairs routed through unarization, numeric pairs decided
/// directly).
Verdict decide_partial(const Transducer& M1, const Transducer& M2, const PipelineOptions& opts);

/// Equivalence up to reordering of output letters: one unary projection per
/// letter.
Verdict abelian_decide(const Transducer& M1, const Transducer& M2, const PipelineOptions& opts);

/// Output read in the free group F1 (letters a, a-) or F2 (a, b and
/// inverses, via the Sanov embedding).
Verdict decide_free_group(const Transducer& M1, const Transducer& M2,
                          const PipelineOptions& opts, const std::string& group);

/// Output letters interpreted as rational matrices.
Verdict decide_matrix(const Transducer& M1, const Transducer& M2, const PipelineOptions& opts);

/// Independent replay of a certificate: rebuilds the transformed system from
/// the inputs and checks the certified object (inductive invariant and
/// target membership, or affine closure and vanishing), plus the domain
/// comparison for absolute checks. Returns "" on success, else the reason.
std::string verify_verdict(const Verdict& v, const Transducer& M1, const Transducer& M2,
                           const PipelineOptions& opts);

/// Automaton over bin(Σ) accepting exactly the encodings of L(A).
Dtta bin_automaton(const Dtta& A, AlphabetPtr bin);

}  // namespace treq

#endif
