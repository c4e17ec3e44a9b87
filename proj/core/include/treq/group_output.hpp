#ifndef TREQ_GROUP_OUTPUT_HPP_
#define TREQ_GROUP_OUTPUT_HPP_

#include <string>
#include <vector>

#include "treq/semantics.hpp"
#include "treq/transducer.hpp"

namespace treq {

/// Free-group letters: +1/-1 for a/a⁻, +2/-2 for b/b⁻.
using GroupWord = std::vector<int>;

/// Unique reduced form: no adjacent inverse pair survives (stack scan).
GroupWord reduce_word(const GroupWord& w);

struct IntMatrix2 {
    Int a{0}, b{0}, c{0}, d{0};
    static IntMatrix2 identity();
    IntMatrix2 operator*(const IntMatrix2& o) const;
    bool operator==(const IntMatrix2& o) const;
    Int det() const { return a * d - b * c; }
    std::string to_string() const;
};

/// Sanov generators: a = [[1,0],[2,1]], b = [[1,2],[0,1]], and inverses.
IntMatrix2 sanov_letter(int letter);
IntMatrix2 sanov(const GroupWord& w);

/// F1 = Z: the signed count of a letters. Words must use only ±a.
long long f1_encode(const GroupWord& w);

/// Transducer output letters (named a, a-, b, b-) as group letters.
GroupWord to_group_word(const Transducer& M, const std::vector<int>& letters);
std::string group_word_to_string(const GroupWord& w);

/// Sanov matrices as a letter interpretation for a transducer whose output
/// letters are among a, a-, b, b-.
MatrixInterp sanov_interp(const Transducer& M);

/// Parses `(matrix-interp (dim l) (letter a ((..) (..))) ...)` against the
/// transducer's declared letters.
MatrixInterp matrix_interp_from_sexpr(const Sexpr& s, const Transducer& M);
MatrixInterp matrix_interp_from_string(const std::string& text, const Transducer& M);

std::string matrix_to_string(const std::vector<Rat>& flat, int l);

}  // namespace treq

#endif
