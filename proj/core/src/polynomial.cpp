#include "treq/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace treq {

int VariableSpace::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

SpacePtr make_space(std::vector<std::string> names) {
    auto sp = std::make_shared<VariableSpace>();
    sp->names = std::move(names);
    return sp;
}

Monomial Monomial::var(size_t n, size_t i, uint32_t p) {
    Monomial m = one(n);
    m.e.at(i) = p;
    return m;
}

int Monomial::deg() const {
    int d = 0;
    for (uint32_t x : e) d += static_cast<int>(x);
    return d;
}

bool Monomial::is_one() const {
    for (uint32_t x : e)
        if (x) return false;
    return true;
}

Monomial Monomial::mul(const Monomial& o) const {
    Monomial m = *this;
    for (size_t i = 0; i < e.size(); ++i) m.e[i] += o.e[i];
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& d) const {
    Monomial m = *this;
    for (size_t i = 0; i < e.size(); ++i) {
        if (d.e[i] > m.e[i]) throw std::invalid_argument("monomial quotient undefined");
        m.e[i] -= d.e[i];
    }
    return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::max(a.e[i], b.e[i]);
    return m;
}

bool Monomial::coprime(const Monomial& o) const {
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] && o.e[i]) return false;
    return true;
}

namespace {

// grlex on a contiguous index range: degree first, then lex with earlier
// variables greater.
int grlex_cmp(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    int da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i) {
        da += static_cast<int>(a.e[i]);
        db += static_cast<int>(b.e[i]);
    }
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = lo; i < hi; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}

}  // namespace

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
    size_t n = a.e.size();
    if (split > 0) {
        int c = grlex_cmp(a, b, 0, std::min(split, n));
        if (c != 0) return c < 0;
        return grlex_cmp(a, b, std::min(split, n), n) < 0;
    }
    return grlex_cmp(a, b, 0, n) < 0;
}

Polynomial Polynomial::zero(SpacePtr space, MonomialOrder order) {
    return Polynomial(std::move(space), order);
}

Polynomial Polynomial::constant(SpacePtr space, const Rat& c, MonomialOrder order) {
    Polynomial p(space, order);
    if (sgn(c) != 0) p.terms_.emplace_back(Monomial::one(space->size()), c);
    return p;
}

Polynomial Polynomial::variable(SpacePtr space, size_t i, MonomialOrder order) {
    Polynomial p(space, order);
    p.terms_.emplace_back(Monomial::var(space->size(), i), Rat(1));
    return p;
}

Polynomial Polynomial::from_terms(SpacePtr space, MonomialOrder order, std::vector<Term> terms) {
    std::map<std::vector<uint32_t>, Rat> acc;
    for (Term& t : terms) {
        if (t.first.e.size() != space->size())
            throw std::invalid_argument("monomial has wrong variable count");
        acc[t.first.e] += t.second;
    }
    Polynomial p(std::move(space), order);
    for (auto& [e, c] : acc)
        if (sgn(c) != 0) p.terms_.emplace_back(Monomial{e}, c);
    std::sort(p.terms_.begin(), p.terms_.end(),
              [&](const Term& a, const Term& b) { return order.less(b.first, a.first); });
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const Term& t : terms_) d = std::max(d, t.first.deg());
    return d;
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
    return terms_[0].first;
}

const Rat& Polynomial::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return terms_[0].second;
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (!(space_ == o.space_ || *space_ == *o.space_) || !(order_ == o.order_))
        throw std::invalid_argument("polynomials from different spaces or orders");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial out(space_, order_);
    out.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && order_.less(o.terms_[j].first, terms_[i].first))) {
            out.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || order_.less(terms_[i].first, o.terms_[j].first)) {
            out.terms_.push_back(o.terms_[j++]);
        } else {
            Rat c = terms_[i].second + o.terms_[j].second;
            if (sgn(c) != 0) out.terms_.emplace_back(terms_[i].first, c);
            ++i;
            ++j;
        }
    }
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (Term& t : out.terms_) t.second = -t.second;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    std::map<std::vector<uint32_t>, Rat> acc;
    for (const Term& a : terms_)
        for (const Term& b : o.terms_) acc[a.first.mul(b.first).e] += a.second * b.second;
    Polynomial out(space_, order_);
    for (auto& [e, c] : acc)
        if (sgn(c) != 0) out.terms_.emplace_back(Monomial{e}, c);
    std::sort(out.terms_.begin(), out.terms_.end(),
              [&](const Term& a, const Term& b) { return order_.less(b.first, a.first); });
    return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second)
            return false;
    return true;
}

Polynomial Polynomial::scaled(const Rat& c) const {
    if (sgn(c) == 0) return Polynomial(space_, order_);
    Polynomial out = *this;
    for (Term& t : out.terms_) t.second *= c;
    return out;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rat& c) const {
    if (sgn(c) == 0) return Polynomial(space_, order_);
    Polynomial out = *this;
    for (Term& t : out.terms_) {
        t.first = t.first.mul(m);
        t.second *= c;
    }
    return out;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    return scaled(Rat(1) / leading_coeff());
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial out = Polynomial::constant(space_, Rat(1), order_);
    Polynomial base = *this;
    while (k) {
        if (k & 1) out = out * base;
        base = base * base;
        k >>= 1;
    }
    return out;
}

Polynomial Polynomial::reordered(MonomialOrder order) const {
    Polynomial out(space_, order);
    out.terms_ = terms_;
    std::sort(out.terms_.begin(), out.terms_.end(),
              [&](const Term& a, const Term& b) { return order.less(b.first, a.first); });
    return out;
}

Rat Polynomial::evaluate(std::span<const Rat> point) const {
    if (point.size() != space_->size())
        throw std::invalid_argument("evaluation point has wrong dimension");
    Rat sum(0);
    for (const Term& t : terms_) {
        Rat prod = t.second;
        for (size_t i = 0; i < point.size(); ++i)
            for (uint32_t k = 0; k < t.first.e[i]; ++k) prod *= point[i];
        sum += prod;
    }
    return sum;
}

Rat Polynomial::coeff_of(const Monomial& m) const {
    for (const Term& t : terms_)
        if (t.first == m) return t.second;
    return Rat(0);
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms_.size(); ++i) {
        const auto& [m, c] = terms_[i];
        Rat a = c;
        if (i == 0) {
            if (sgn(a) < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += sgn(a) < 0 ? " - " : " + ";
            if (sgn(a) < 0) a = -a;
        }
        bool printed = false;
        if (m.is_one() || a != 1) {
            out += rat_to_string(a);
            printed = true;
        }
        for (size_t v = 0; v < m.e.size(); ++v) {
            if (!m.e[v]) continue;
            if (printed) out += "*";
            out += space_->names[v];
            if (m.e[v] > 1) out += "^" + std::to_string(m.e[v]);
            printed = true;
        }
    }
    return out;
}

namespace {

struct PolyScanner {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return s[pos];
    }
};

}  // namespace

Polynomial Polynomial::parse(SpacePtr space, const std::string& text, MonomialOrder order) {
    PolyScanner sc{text};
    std::vector<Term> terms;
    bool first = true;
    while (!sc.done()) {
        int sign = 1;
        char c = sc.peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            ++sc.pos;
        } else if (!first) {
            throw std::invalid_argument("expected + or - in polynomial: " + text);
        }
        first = false;
        // one term: factors joined by '*'
        Rat coeff(sign);
        Monomial mono = Monomial::one(space->size());
        bool expect_factor = true;
        while (expect_factor) {
            sc.skip_ws();
            if (sc.pos >= sc.s.size()) {
                if (expect_factor) throw std::invalid_argument("truncated polynomial: " + text);
                break;
            }
            char f0 = sc.s[sc.pos];
            if (std::isdigit(static_cast<unsigned char>(f0))) {
                size_t start = sc.pos;
                while (sc.pos < sc.s.size() &&
                       (std::isdigit(static_cast<unsigned char>(sc.s[sc.pos])) ||
                        sc.s[sc.pos] == '/'))
                    ++sc.pos;
                coeff *= rat_from_string(sc.s.substr(start, sc.pos - start));
            } else {
                // variable name: read until one of * ^ + - or whitespace
                size_t start = sc.pos;
                while (sc.pos < sc.s.size() && !std::isspace(static_cast<unsigned char>(sc.s[sc.pos])) &&
                       sc.s[sc.pos] != '*' && sc.s[sc.pos] != '^' && sc.s[sc.pos] != '+' &&
                       sc.s[sc.pos] != '-')
                    ++sc.pos;
                std::string name = sc.s.substr(start, sc.pos - start);
                int idx = space->index_of(name);
                if (idx < 0) throw std::invalid_argument("unknown variable '" + name + "'");
                uint32_t p = 1;
                sc.skip_ws();
                if (sc.pos < sc.s.size() && sc.s[sc.pos] == '^') {
                    ++sc.pos;
                    sc.skip_ws();
                    size_t es = sc.pos;
                    while (sc.pos < sc.s.size() &&
                           std::isdigit(static_cast<unsigned char>(sc.s[sc.pos])))
                        ++sc.pos;
                    if (es == sc.pos) throw std::invalid_argument("missing exponent");
                    p = static_cast<uint32_t>(std::stoul(sc.s.substr(es, sc.pos - es)));
                }
                mono = mono.mul(Monomial::var(space->size(), idx, p));
            }
            sc.skip_ws();
            if (sc.pos < sc.s.size() && sc.s[sc.pos] == '*') {
                ++sc.pos;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        terms.emplace_back(std::move(mono), std::move(coeff));
    }
    return from_terms(std::move(space), order, std::move(terms));
}

bool poly_less(const Polynomial& a, const Polynomial& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    size_t n = std::min(ta.size(), tb.size());
    for (size_t i = 0; i < n; ++i) {
        if (ta[i].first != tb[i].first) return a.order().less(ta[i].first, tb[i].first);
        if (ta[i].second != tb[i].second) return ta[i].second < tb[i].second;
    }
    return ta.size() < tb.size();
}

}  // namespace treq
