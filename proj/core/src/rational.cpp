#include "treq/rational.hpp"

#include <stdexcept>

namespace treq {

std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

FieldZp::Elem FieldZp::from_rat(const Rat& r) const {
    Int num = r.get_num();
    Int den = r.get_den();
    Int pz(static_cast<unsigned long>(p));
    Int nm = num % pz;
    if (nm < 0) nm += pz;
    Int dm = den % pz;
    if (dm == 0) throw PrimeUnusable(p);
    Elem n = static_cast<Elem>(nm.get_ui());
    Elem d = static_cast<Elem>(dm.get_ui());
    return mul(n, inv(d));
}

FieldZp::Elem FieldZp::pow(Elem b, uint64_t e) const {
    Elem r = one();
    b %= p;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

FieldZp::Elem FieldZp::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of 0 mod p");
    return pow(a, p - 2);
}

}  // namespace treq
