#ifndef TREQ_POLY_SYSTEM_HPP_
#define TREQ_POLY_SYSTEM_HPP_

#include <map>
#include <vector>

#include "treq/groebner.hpp"
#include "treq/semantics.hpp"
#include "treq/transducer.hpp"

namespace treq {

/// Per-symbol polynomial semantics over a flattened coordinate space: for a
/// symbol of rank m, coordinate j of the value of f(t1..tm) is sem[f][j]
/// evaluated at the argument blocks x_1..x_m (block i holding the
/// coordinates of ⟦t_i⟧). The z variables name the coordinates themselves.
struct PolySystem {
    AlphabetPtr alpha;
    int dim = 0;
    SpacePtr zspace;                 // dim variables, grlex
    std::vector<SpacePtr> xspaces;   // per rank m: m*dim variables, grlex
    std::map<SymbolId, std::vector<Polynomial>> sem;  // over xspaces[rank(f)]

    const RankedAlphabet& alphabet() const { return *alpha; }
    /// Variable index of coordinate j in block i (1-based block).
    int xvar(int block, int j) const { return (block - 1) * dim + j; }

    /// Vector semantics of a tree via the coordinate polynomials.
    std::vector<Rat> eval_tree(const Tree& t) const;
};

/// System for a total numeric transducer: dim = n(l+1), coordinate q(l+1)+k
/// is the coefficient of y_k in state q.
PolySystem make_poly_system(const Transducer& M);

/// The matrix r^(f) of a numeric transducer: entry [q][k] is the polynomial
/// giving coordinate (q,k) of ⟦f(t1..tm)⟧ from the argument coordinates.
std::vector<std::vector<Polynomial>> symbol_semantics(const Transducer& M, SymbolId f);

/// System for a parameterless string transducer under a matrix
/// interpretation: dim = n·l·l, coordinate (q·l+λ)·l+μ.
PolySystem make_matrix_poly_system(const Transducer& M, const MatrixInterp& interp);

/// The polynomial matrix of one input symbol under a matrix interpretation:
/// entry [q][λ·l+μ].
std::vector<std::vector<Polynomial>> matrix_symbol_semantics(const Transducer& M,
                                                             const MatrixInterp& interp,
                                                             SymbolId f);

/// Weakest precondition r[r^(f)/z]: transports a demand on ⟦f(t1..tm)⟧ to a
/// demand on the argument blocks. For monadic symbols the result can be read
/// over z again (block identification); use wp_monadic for that view.
Polynomial wp(const Polynomial& r, SymbolId f, const PolySystem& sys);
Polynomial wp_monadic(const Polynomial& r, SymbolId f, const PolySystem& sys);

}  // namespace treq

#endif
