#ifndef TREQ_GROEBNER_HPP_
#define TREQ_GROEBNER_HPP_

#include <span>
#include <vector>

#include "treq/polynomial.hpp"

namespace treq {

struct DivisionResult {
    Polynomial nf;
    std::vector<Polynomial> cofactors;  // f = sum cofactors[i]*G[i] + nf (when tracked)
};

/// Full multivariate division: no monomial of nf is divisible by any leading
/// monomial of G. Deterministic (first divisor in G order wins).
DivisionResult divide(const Polynomial& f, std::span<const Polynomial> G,
                      bool track_cofactors = false);
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> G);

/// Buchberger's algorithm with the product and chain criteria, normal
/// selection (smallest lcm first). Returns the reduced monic basis sorted
/// ascending by leading monomial; an ideal containing a nonzero constant
/// collapses to {1}.
std::vector<Polynomial> buchberger(std::vector<Polynomial> gens);

bool member(const Polynomial& f, std::span<const Polynomial> gb);

std::vector<Polynomial> ideal_sum(std::span<const Polynomial> a, std::span<const Polynomial> b);

/// Generator-wise variable renaming into another space; var_map[i] is the
/// target index of source variable i.
Polynomial rename_vars(const Polynomial& f, SpacePtr target, std::span<const int> var_map,
                       MonomialOrder order = kGrlex);

/// Homomorphic substitution: images[i] replaces variable i; all images share
/// one target space and order.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images);

/// Basis of ⟨gens⟩ ∩ Q[tail vars]: Gröbner basis under the elimination order
/// dropping the first `drop` variables, filtered to the block-free elements
/// and renamed into `target` (source var drop+i -> target var i).
std::vector<Polynomial> eliminate(std::vector<Polynomial> gens, size_t drop, SpacePtr target);

/// α_d: the ideal generated by the degree-≤d elements of a graded Gröbner
/// basis of ⟨gens⟩ — the smallest ideal agreeing with ⟨gens⟩ on polynomials
/// of total degree at most d.
std::vector<Polynomial> degree_truncate(std::vector<Polynomial> gens, int d);

/// Ideal intersection via the t-trick: eliminate t from t·I + (1-t)·J.
std::vector<Polynomial> intersect(std::span<const Polynomial> I, std::span<const Polynomial> J);

/// Reduced grlex basis of the vanishing ideal of a finite point set
/// (Buchberger-Möller). An empty point set yields {1}.
std::vector<Polynomial> vanishing_ideal(const std::vector<std::vector<Rat>>& points,
                                        SpacePtr space);

/// Mutual membership of generators.
bool same_ideal(std::span<const Polynomial> gb1, std::span<const Polynomial> gb2);

}  // namespace treq

#endif
