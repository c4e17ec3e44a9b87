#include "treq/tree.hpp"

#include <algorithm>

namespace treq {

int tree_depth(const Tree& t) {
    int d = 0;
    for (const Tree& k : t.kids) d = std::max(d, tree_depth(k));
    return d + 1;
}

int tree_size(const Tree& t) {
    int n = 1;
    for (const Tree& k : t.kids) n += tree_size(k);
    return n;
}

std::string tree_to_string(const Tree& t, const RankedAlphabet& alpha) {
    std::string out = "(" + alpha.name(t.sym);
    for (const Tree& k : t.kids) {
        out += ' ';
        out += tree_to_string(k, alpha);
    }
    out += ')';
    return out;
}

Tree tree_from_sexpr(const Sexpr& s, const RankedAlphabet& alpha) {
    // A bare atom is shorthand for a nullary symbol.
    if (s.is_atom) {
        auto id = alpha.find(s.tok);
        if (!id) throw ParseError("unknown symbol '" + s.tok + "'", s.line, s.col);
        if (alpha.rank(*id) != 0)
            throw ParseError("symbol '" + s.tok + "' has rank " +
                                 std::to_string(alpha.rank(*id)) + ", expected 0",
                             s.line, s.col);
        return Tree(*id);
    }
    if (s.items.empty() || !s.items[0].is_atom)
        throw ParseError("expected tree node", s.line, s.col);
    auto id = alpha.find(s.items[0].tok);
    if (!id) throw ParseError("unknown symbol '" + s.items[0].tok + "'", s.line, s.col);
    int rank = alpha.rank(*id);
    if (static_cast<int>(s.items.size()) - 1 != rank)
        throw ParseError("symbol '" + s.items[0].tok + "' expects " + std::to_string(rank) +
                             " children, got " + std::to_string(s.items.size() - 1),
                         s.line, s.col);
    Tree t(*id);
    for (size_t i = 1; i < s.items.size(); ++i)
        t.kids.push_back(tree_from_sexpr(s.items[i], alpha));
    return t;
}

Tree tree_from_string(const std::string& text, const RankedAlphabet& alpha) {
    return tree_from_sexpr(sexpr_parse(text), alpha);
}

}  // namespace treq
