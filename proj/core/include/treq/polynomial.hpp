#ifndef TREQ_POLYNOMIAL_HPP_
#define TREQ_POLYNOMIAL_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "treq/rational.hpp"

namespace treq {

/// An ordered list of variable names. The position in the list is the
/// variable index and fixes the lexicographic tie-break (earlier = greater).
struct VariableSpace {
    std::vector<std::string> names;
    size_t size() const { return names.size(); }
    int index_of(const std::string& name) const;  // -1 if absent
    bool operator==(const VariableSpace& o) const { return names == o.names; }
};
using SpacePtr = std::shared_ptr<const VariableSpace>;

SpacePtr make_space(std::vector<std::string> names);

struct Monomial {
    std::vector<uint32_t> e;

    static Monomial one(size_t n) { return Monomial{std::vector<uint32_t>(n, 0)}; }
    static Monomial var(size_t n, size_t i, uint32_t p = 1);
    int deg() const;
    bool is_one() const;
    Monomial mul(const Monomial& o) const;
    bool divides(const Monomial& o) const;  // this | o
    Monomial quotient(const Monomial& d) const;  // this / d, requires d | this
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool coprime(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

/// split == 0: graded lexicographic. split == k > 0: elimination (block)
/// order where variables [0, k) dominate — grlex on the first block, ties
/// broken by grlex on the rest. Any monomial containing a block variable is
/// greater than any monomial without, so basis elements with block-free
/// leading monomials are entirely block-free.
struct MonomialOrder {
    size_t split = 0;
    bool graded() const { return split == 0; }
    bool less(const Monomial& a, const Monomial& b) const;
    bool operator==(const MonomialOrder& o) const { return split == o.split; }
};

inline constexpr MonomialOrder kGrlex{0};

/// Exact multivariate polynomial: terms sorted descending under the carried
/// order, no zero coefficients.
class Polynomial {
public:
    using Term = std::pair<Monomial, Rat>;

    Polynomial() = default;
    Polynomial(SpacePtr space, MonomialOrder order)
        : space_(std::move(space)), order_(order) {}

    static Polynomial zero(SpacePtr space, MonomialOrder order = kGrlex);
    static Polynomial constant(SpacePtr space, const Rat& c, MonomialOrder order = kGrlex);
    static Polynomial variable(SpacePtr space, size_t i, MonomialOrder order = kGrlex);
    static Polynomial from_terms(SpacePtr space, MonomialOrder order, std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_[0].first.is_one(); }
    int degree() const;  // total degree, -1 for the zero polynomial
    const SpacePtr& space() const { return space_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    const Monomial& leading_monomial() const;
    const Rat& leading_coeff() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial scaled(const Rat& c) const;
    Polynomial mul_term(const Monomial& m, const Rat& c) const;
    Polynomial monic() const;
    Polynomial pow(unsigned k) const;
    Polynomial reordered(MonomialOrder order) const;

    Rat evaluate(std::span<const Rat> point) const;
    Rat coeff_of(const Monomial& m) const;

    std::string to_string() const;
    /// Parses the canonical text form, e.g. "3/2*z[1,0]^2*x[2,1,1] + 1".
    static Polynomial parse(SpacePtr space, const std::string& text,
                            MonomialOrder order = kGrlex);

private:
    void check_compatible(const Polynomial& o) const;

    SpacePtr space_;
    MonomialOrder order_;
    std::vector<Term> terms_;
};

/// Deterministic total order on polynomials of one space/order, for
/// canonical generator lists.
bool poly_less(const Polynomial& a, const Polynomial& b);

}  // namespace treq

#endif
