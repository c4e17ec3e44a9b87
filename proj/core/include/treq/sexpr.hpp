#ifndef TREQ_SEXPR_HPP_
#define TREQ_SEXPR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treq {

/// Parse error with a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int col)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line(line), col(col) {}
    int line;
    int col;
};

/// A parsed s-expression: either an atom token or a list of child expressions.
/// Comments run from ';' to end of line.
struct Sexpr {
    bool is_atom = false;
    std::string tok;           // atom text
    std::vector<Sexpr> items;  // list children
    int line = 0;
    int col = 0;

    const Sexpr& at(size_t i) const;
    /// Atom text; throws ParseError if this is a list.
    const std::string& atom() const;
    /// First child's atom, or "" for an empty/atom node. Lists are
    /// conventionally tagged by their head atom.
    std::string head() const;
    bool is_list(const std::string& tag) const;
    long long as_int() const;
};

/// Parses exactly one s-expression (trailing whitespace/comments allowed).
Sexpr sexpr_parse(std::string_view text);

/// Parses a whole file: a sequence of top-level s-expressions.
std::vector<Sexpr> sexpr_parse_all(std::string_view text);

std::string sexpr_to_string(const Sexpr& s);

}  // namespace treq

#endif
