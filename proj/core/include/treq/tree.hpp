#ifndef TREQ_TREE_HPP_
#define TREQ_TREE_HPP_

#include <string>
#include <vector>

#include "treq/alphabet.hpp"
#include "treq/sexpr.hpp"

namespace treq {

/// A ranked tree. Children count always equals the root symbol's rank;
/// symbol ids refer to the alphabet the tree was built against.
struct Tree {
    SymbolId sym = -1;
    std::vector<Tree> kids;

    Tree() = default;
    explicit Tree(SymbolId s) : sym(s) {}
    Tree(SymbolId s, std::vector<Tree> k) : sym(s), kids(std::move(k)) {}

    bool operator==(const Tree& o) const { return sym == o.sym && kids == o.kids; }
    bool operator!=(const Tree& o) const { return !(*this == o); }
};

/// Depth with leaves at depth 1.
int tree_depth(const Tree& t);
int tree_size(const Tree& t);  // node count

std::string tree_to_string(const Tree& t, const RankedAlphabet& alpha);
Tree tree_from_sexpr(const Sexpr& s, const RankedAlphabet& alpha);
Tree tree_from_string(const std::string& text, const RankedAlphabet& alpha);

}  // namespace treq

#endif
