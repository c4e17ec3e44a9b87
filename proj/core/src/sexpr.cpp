#include "treq/sexpr.hpp"

namespace treq {

const Sexpr& Sexpr::at(size_t i) const {
    if (is_atom || i >= items.size())
        throw ParseError("expected list element " + std::to_string(i), line, col);
    return items[i];
}

const std::string& Sexpr::atom() const {
    if (!is_atom) throw ParseError("expected atom, got list", line, col);
    return tok;
}

std::string Sexpr::head() const {
    if (is_atom || items.empty() || !items[0].is_atom) return "";
    return items[0].tok;
}

bool Sexpr::is_list(const std::string& tag) const { return !is_atom && head() == tag; }

long long Sexpr::as_int() const {
    const std::string& s = atom();
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + s + "'", line, col);
    }
}

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        while (!done()) {
            char c = peek();
            if (c == ';') {
                while (!done() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }
};

bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' || c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

Sexpr parse_one(Cursor& cur) {
    cur.skip_ws();
    if (cur.done()) throw ParseError("unexpected end of input", cur.line, cur.col);
    Sexpr out;
    out.line = cur.line;
    out.col = cur.col;
    if (cur.peek() == '(') {
        cur.advance();
        out.is_atom = false;
        for (;;) {
            cur.skip_ws();
            if (cur.done()) throw ParseError("unterminated list", out.line, out.col);
            if (cur.peek() == ')') {
                cur.advance();
                return out;
            }
            out.items.push_back(parse_one(cur));
        }
    }
    if (cur.peek() == ')') throw ParseError("unexpected ')'", cur.line, cur.col);
    out.is_atom = true;
    while (!cur.done() && !is_delim(cur.peek())) {
        out.tok.push_back(cur.peek());
        cur.advance();
    }
    return out;
}

}  // namespace

Sexpr sexpr_parse(std::string_view text) {
    Cursor cur{text};
    Sexpr s = parse_one(cur);
    cur.skip_ws();
    if (!cur.done()) throw ParseError("trailing input after s-expression", cur.line, cur.col);
    return s;
}

std::vector<Sexpr> sexpr_parse_all(std::string_view text) {
    Cursor cur{text};
    std::vector<Sexpr> out;
    for (;;) {
        cur.skip_ws();
        if (cur.done()) return out;
        out.push_back(parse_one(cur));
    }
}

std::string sexpr_to_string(const Sexpr& s) {
    if (s.is_atom) return s.tok;
    std::string out = "(";
    for (size_t i = 0; i < s.items.size(); ++i) {
        if (i) out += ' ';
        out += sexpr_to_string(s.items[i]);
    }
    out += ')';
    return out;
}

}  // namespace treq
