#ifndef TREQ_AFFINE_ENGINE_HPP_
#define TREQ_AFFINE_ENGINE_HPP_

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treq/affine.hpp"
#include "treq/dtta.hpp"
#include "treq/primes.hpp"
#include "treq/semantics.hpp"

namespace treq {

/// Affine test functional H(v) = v[plus] - v[minus].
struct AffineFunctional {
    int plus = 0;
    int minus = 0;
};

template <class F>
struct ClosureResult {
    std::map<State, AffineBasis<F>> basis;
    long long insertions = 0;
};

/// Least solution of V_p ⊇ ⟦f⟧(V_p1,...,V_pm) over affine subsets of the
/// value space, one basis per automaton state: aff(basis at p) equals
/// aff({⟦t⟧ | t ∈ dom(p)}). Worklist iteration over transitions; per
/// transition only tuples not yet processed are evaluated (tracked by the
/// element counts already seen per child position).
template <class F, class Sem>
ClosureResult<F> closure_fixpoint(const Sem& sem, const Dtta& A) {
    if (!(sem.alphabet() == A.alphabet()))
        throw std::invalid_argument("closure_fixpoint: alphabet mismatch");
    ClosureResult<F> res;
    for (State p = 0; p < A.state_count(); ++p)
        res.basis.emplace(p, AffineBasis<F>(sem.field(), sem.dim()));

    struct Trans {
        State p;
        SymbolId f;
        const std::vector<State>* kids;
        std::vector<size_t> seen;
        bool done_nullary = false;
    };
    std::vector<Trans> transitions;
    std::map<State, std::vector<size_t>> consumers;
    for (const auto& [key, kids] : A.rules()) {
        size_t idx = transitions.size();
        transitions.push_back(
            {key.first, key.second, &kids, std::vector<size_t>(kids.size(), 0), false});
        for (State c : kids) consumers[c].push_back(idx);
    }

    std::deque<size_t> work;
    std::vector<bool> queued(transitions.size(), false);
    for (size_t i = 0; i < transitions.size(); ++i) {
        work.push_back(i);
        queued[i] = true;
    }

    while (!work.empty()) {
        size_t idx = work.front();
        work.pop_front();
        queued[idx] = false;
        Trans& tr = transitions[idx];
        size_t m = tr.kids->size();

        std::vector<size_t> cur(m);
        bool child_empty = false;
        for (size_t i = 0; i < m; ++i) {
            cur[i] = res.basis.at((*tr.kids)[i]).elements().size();
            if (cur[i] == 0) child_empty = true;
        }
        if (child_empty) continue;

        auto process_tuple = [&](const std::vector<size_t>& tuple) {
            std::vector<Vec<F>> args;
            args.reserve(m);
            Tree tree(tr.f);
            for (size_t i = 0; i < m; ++i) {
                const auto& el = res.basis.at((*tr.kids)[i]).elements()[tuple[i]];
                args.push_back(el.first);
                tree.kids.push_back(el.second);
            }
            Vec<F> v = sem.apply(tr.f, args);
            if (res.basis.at(tr.p).insert(std::move(v), std::move(tree))) {
                ++res.insertions;
                for (size_t c : consumers[tr.p])
                    if (!queued[c]) {
                        queued[c] = true;
                        work.push_back(c);
                    }
            }
        };

        if (m == 0) {
            if (!tr.done_nullary) {
                tr.done_nullary = true;
                process_tuple({});
            }
            continue;
        }

        // Tuples with at least one unseen index: position j takes the new
        // range, earlier positions the old one, later positions everything.
        for (size_t j = 0; j < m; ++j) {
            if (tr.seen[j] >= cur[j]) continue;
            std::vector<size_t> lo(m), hi(m);
            bool empty_block = false;
            for (size_t i = 0; i < m; ++i) {
                lo[i] = i == j ? tr.seen[i] : 0;
                hi[i] = i < j ? tr.seen[i] : cur[i];
                if (lo[i] >= hi[i]) empty_block = true;
            }
            if (empty_block) continue;
            std::vector<size_t> tuple = lo;
            bool done = false;
            while (!done) {
                process_tuple(tuple);
                done = true;
                for (size_t pos = m; pos-- > 0;) {
                    if (++tuple[pos] < hi[pos]) {
                        done = false;
                        break;
                    }
                    tuple[pos] = lo[pos];
                }
            }
        }
        tr.seen = cur;
    }
    return res;
}

/// Outcome of an affine-closure equivalence check.
template <class F>
struct AffineOutcome {
    bool equivalent = false;
    std::optional<Tree> witness;  // tree in dom(initial) violating some functional
    ClosureResult<F> closure;
};

/// Runs the fixpoint and tests every functional on every inserted element of
/// the initial state's basis. A violating element's stored tree is a genuine
/// counterexample (H vanishing on all inserted points forces vanishing on
/// the affine hull, hence on every semantics vector in dom).
template <class F, class Sem>
AffineOutcome<F> affine_check(const Sem& sem, const Dtta& A,
                              const std::vector<AffineFunctional>& targets) {
    AffineOutcome<F> out;
    out.closure = closure_fixpoint<F>(sem, A);
    const F& field = sem.field();
    for (const auto& [v, tree] : out.closure.basis.at(A.initial()).elements()) {
        for (const AffineFunctional& h : targets) {
            if (!field.eq(v[h.plus], v[h.minus])) {
                out.equivalent = false;
                out.witness = tree;
                return out;
            }
        }
    }
    out.equivalent = true;
    return out;
}

struct AffineVerdict {
    bool equivalent = false;
    std::optional<Tree> witness;
    std::map<State, int> basis_dims;                      // affine dimension per automaton state
    std::map<State, std::vector<std::pair<std::vector<Rat>, Tree>>> elements;  // certificate
    long long insertions = 0;
};

/// Equivalence of states q, q' of a total numeric transducer relative to A,
/// over exact rationals. Refuses self-nested transducers with parameters
/// (affine closures are only complete for multi-affine symbol semantics);
/// callers should use the invariant engine for those.
AffineVerdict decide_affine(const Transducer& M, const Dtta& A, State q, State q2);

/// (h+1)^((|M|(m+1))^N): bound on outputs of a non-self-nested transducer on
/// trees of depth N with parameter values at most b (times b). The exponent
/// is capped at 2^20; the cap only loosens the randomized-trial analysis,
/// never soundness.
Int length_bound(const Transducer& M, long depth);

struct ModularVerdict {
    bool probably_equivalent = false;
    std::optional<Tree> witness;  // verified over Q before returning
    uint64_t failing_prime = 0;
    std::vector<uint64_t> primes_tried;
};

/// Runs the affine check modulo a single prime. Sound for inequivalence: a
/// violation mod p implies a violation over Q, and the witness tree is
/// re-verified exactly.
AffineVerdict decide_affine_mod(const Transducer& M, const Dtta& A, State q, State q2,
                                uint64_t prime);

/// `trials` independent primes sampled from [2, min(D·e^D, 2^64)) where 2^D
/// bounds the bit length of basis-tree outputs. Never reports inequivalence
/// for equivalent states; inequivalence is found with error probability
/// decreasing per trial.
ModularVerdict decide_modular(const Transducer& M, const Dtta& A, State q, State q2, int trials,
                              uint64_t seed);

}  // namespace treq

#endif
