#ifndef TREQ_INVARIANT_ENGINE_HPP_
#define TREQ_INVARIANT_ENGINE_HPP_

#include <map>
#include <optional>
#include <vector>

#include "treq/dtta.hpp"
#include "treq/poly_system.hpp"

namespace treq {

/// A family of ideals over z, one per automaton state, each kept as a
/// reduced Gröbner basis (empty list = zero ideal).
struct InvariantMap {
    std::map<State, std::vector<Polynomial>> ideal;
};

/// Inductiveness of I relative to A: for every transition ρ(p,f)=(p1..pm)
/// and every generator g of I_p, the weakest precondition g[r^(f)/z] lies in
/// ⟨I_p1(x_1) ∪ ... ∪ I_pm(x_m)⟩. Nullary transitions are the rank-0 case:
/// the union ideal is zero, so the precondition (a constant) must be 0.
bool is_inductive(const InvariantMap& I, const PolySystem& sys, const Dtta& A);

/// ⟦f⟧♯(I_1..I_m) = {r | r[r^(f)/z] ∈ ⟨I_1(x_1) ∪ ... ∪ I_m(x_m)⟩}, computed
/// exactly as (⟨z_j − r^(f)_j⟩ + ⟨∪ I_i(x_i)⟩) ∩ Q[z] by elimination.
std::vector<Polynomial> symbolic_preimage(const PolySystem& sys, SymbolId f,
                                          const std::vector<std::vector<Polynomial>>& children);

/// The degree-≤d part of ⟦f⟧♯(I_1..I_m) as an ideal (equals
/// α_d(⟦f⟧♯(I_1..I_m))): normal forms of the substituted monomials against
/// the block-renamed union basis (already a Gröbner basis, the blocks being
/// disjoint), then an exact nullspace.
std::vector<Polynomial> truncated_preimage(const PolySystem& sys, SymbolId f,
                                           const std::vector<std::vector<Polynomial>>& children,
                                           int d);

/// bar I^(d): per state the vanishing ideal of {⟦t⟧ | t ∈ dom_d(p)}.
/// Computed from the finite point set (Buchberger-Möller) while the sets are
/// small, symbolically per the greatest-fixpoint step beyond; both routes
/// produce the same ideals.
InvariantMap counterexample_pass(const PolySystem& sys, const Dtta& A, int d,
                                 int point_switch = 3, long long max_points = 5000);

/// Greatest family with I_p ⊆ α_d(⟦f⟧♯(I_p1..I_pm)) for every transition,
/// by descending iteration from the unit ideals. The result is an inductive
/// invariant for every d ≥ 1.
InvariantMap invariant_pass(const PolySystem& sys, const Dtta& A, int d);

enum class VerdictKind { Equivalent, NotEquivalent, Unknown };

struct EngineVerdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<Tree> witness;  // over the system's input alphabet
    InvariantMap certificate;
    int certificate_degree = 0;
    int depth_reached = 0;
    std::string engine;
};

/// Decision procedure for monadic input alphabets: least solution of the
/// weakest-precondition propagation seeded with the target polynomials at
/// the automaton's initial state, then the nullary checks. Always decides;
/// a failing demand chain is replayed into a concrete witness tree.
EngineVerdict monadic_decide(const PolySystem& sys, const Dtta& A,
                             const std::vector<Polynomial>& targets,
                             long long max_generators = 20000);

struct TwinBudget {
    int max_degree = 4;
    int point_switch = 3;
    long long max_points = 5000;
};

/// Interleaves the counterexample pass and the invariant pass for
/// d = 1, 2, ...: inequivalence is reported with an explicit witness found
/// by enumerating dom_d, equivalence with the inductive certificate once
/// every target lies in the initial state's ideal. Budget exhaustion yields
/// Unknown (the terminating d exists but is not computable a priori).
EngineVerdict twin_decide(const PolySystem& sys, const Dtta& A,
                          const std::vector<Polynomial>& targets, const TwinBudget& budget);

/// dom_d(p) cardinality with saturation at `cap`.
long long count_dom(const Dtta& A, State p, int d, long long cap);

}  // namespace treq

#endif
