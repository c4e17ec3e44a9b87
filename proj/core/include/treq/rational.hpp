#ifndef TREQ_RATIONAL_HPP_
#define TREQ_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace treq {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonical text form: "0", "-3", "5/2".
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);  // throws std::invalid_argument

/// Thrown by FieldZp when a rational cannot be reduced modulo p
/// (denominator divisible by p). Callers resample the prime.
class PrimeUnusable : public std::runtime_error {
public:
    explicit PrimeUnusable(uint64_t p)
        : std::runtime_error("denominator divisible by prime " + std::to_string(p)) {}
};

/// The field of rationals. Engines are templated on a field so the same
/// code runs exactly over Q and modulo a prime.
struct FieldQ {
    using Elem = Rat;
    static constexpr bool modular = false;

    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_int(long v) const { return Rat(v); }
    Elem from_rat(const Rat& r) const { return r; }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }
    std::string to_string(const Elem& a) const { return rat_to_string(a); }
};

/// Z_p for a prime p < 2^63.
struct FieldZp {
    using Elem = uint64_t;
    static constexpr bool modular = true;
    uint64_t p = 2;

    FieldZp() = default;
    explicit FieldZp(uint64_t prime) : p(prime) {}

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long v) const {
        long long m = static_cast<long long>(v % static_cast<long long>(p));
        if (m < 0) m += static_cast<long long>(p);
        return static_cast<Elem>(m);
    }
    Elem from_rat(const Rat& r) const;
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const {
        Elem s = a + b;
        return s >= p || s < a ? s - p : s;
    }
    Elem sub(const Elem& a, const Elem& b) const { return a >= b ? a - b : a + p - b; }
    Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
    Elem mul(const Elem& a, const Elem& b) const {
        return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p);
    }
    Elem pow(Elem b, uint64_t e) const;
    Elem inv(Elem a) const;  // a != 0
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    std::string to_string(const Elem& a) const { return std::to_string(a); }
};

}  // namespace treq

#endif
