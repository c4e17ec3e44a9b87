#include "treq/group_output.hpp"

#include <stdexcept>

namespace treq {

GroupWord reduce_word(const GroupWord& w) {
    GroupWord out;
    for (int letter : w) {
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

IntMatrix2 IntMatrix2::identity() { return {1, 0, 0, 1}; }

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

bool IntMatrix2::operator==(const IntMatrix2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
}

std::string IntMatrix2::to_string() const {
    return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," + d.get_str() +
           "]]";
}

IntMatrix2 sanov_letter(int letter) {
    switch (letter) {
        case 1:
            return {1, 0, 2, 1};
        case -1:
            return {1, 0, -2, 1};
        case 2:
            return {1, 2, 0, 1};
        case -2:
            return {1, -2, 0, 1};
    }
    throw std::invalid_argument("unknown group letter " + std::to_string(letter));
}

IntMatrix2 sanov(const GroupWord& w) {
    IntMatrix2 m = IntMatrix2::identity();
    for (int letter : w) m = m * sanov_letter(letter);
    return m;
}

long long f1_encode(const GroupWord& w) {
    long long n = 0;
    for (int letter : w) {
        if (letter == 1)
            ++n;
        else if (letter == -1)
            --n;
        else
            throw std::invalid_argument("F1 words use only the letter a and its inverse");
    }
    return n;
}

namespace {

int group_letter_of(const std::string& name) {
    if (name == "a") return 1;
    if (name == "a-") return -1;
    if (name == "b") return 2;
    if (name == "b-") return -2;
    throw std::invalid_argument("output letter '" + name +
                                "' is not a free-group generator (a, a-, b, b-)");
}

}  // namespace

GroupWord to_group_word(const Transducer& M, const std::vector<int>& letters) {
    GroupWord w;
    for (int id : letters) w.push_back(group_letter_of(M.letter_name(id)));
    return w;
}

std::string group_word_to_string(const GroupWord& w) {
    if (w.empty()) return "eps";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        switch (w[i]) {
            case 1: out += "a"; break;
            case -1: out += "a-"; break;
            case 2: out += "b"; break;
            case -2: out += "b-"; break;
            default: out += "?"; break;
        }
    }
    return out;
}

MatrixInterp sanov_interp(const Transducer& M) {
    MatrixInterp interp;
    interp.msize = 2;
    interp.letter.resize(M.output_size() + 1);
    for (int id = 1; id <= M.output_size(); ++id) {
        IntMatrix2 m = sanov_letter(group_letter_of(M.letter_name(id)));
        interp.letter[id] = {Rat(m.a), Rat(m.b), Rat(m.c), Rat(m.d)};
    }
    return interp;
}

MatrixInterp matrix_interp_from_sexpr(const Sexpr& s, const Transducer& M) {
    if (!s.is_list("matrix-interp"))
        throw ParseError("expected (matrix-interp ...)", s.line, s.col);
    MatrixInterp interp;
    interp.msize = 0;
    interp.letter.resize(M.output_size() + 1);
    for (size_t i = 1; i < s.items.size(); ++i) {
        const Sexpr& it = s.items[i];
        if (it.is_list("dim")) {
            interp.msize = static_cast<int>(it.at(1).as_int());
        } else if (it.is_list("letter")) {
            auto id = M.find_letter(it.at(1).atom());
            if (!id)
                throw ParseError("letter '" + it.at(1).atom() + "' not declared by transducer",
                                 it.line, it.col);
            const Sexpr& rows = it.at(2);
            std::vector<Rat> flat;
            for (const Sexpr& row : rows.items)
                for (const Sexpr& cell : row.items) flat.push_back(rat_from_string(cell.atom()));
            interp.letter[*id] = std::move(flat);
        } else {
            throw ParseError("unexpected clause in matrix-interp", it.line, it.col);
        }
    }
    if (interp.msize <= 0) throw ParseError("matrix-interp missing (dim ...)", s.line, s.col);
    for (int id = 1; id <= M.output_size(); ++id)
        if (static_cast<int>(interp.letter[id].size()) != interp.msize * interp.msize)
            throw std::invalid_argument("matrix interpretation missing or malformed for letter " +
                                        M.letter_name(id));
    return interp;
}

MatrixInterp matrix_interp_from_string(const std::string& text, const Transducer& M) {
    return matrix_interp_from_sexpr(sexpr_parse(text), M);
}

std::string matrix_to_string(const std::vector<Rat>& flat, int l) {
    std::string out = "[";
    for (int i = 0; i < l; ++i) {
        if (i) out += ",";
        out += "[";
        for (int j = 0; j < l; ++j) {
            if (j) out += ",";
            out += rat_to_string(flat[i * l + j]);
        }
        out += "]";
    }
    out += "]";
    return out;
}

}  // namespace treq
