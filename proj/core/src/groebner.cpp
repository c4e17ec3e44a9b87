#include "treq/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace treq {

DivisionResult divide(const Polynomial& f, std::span<const Polynomial> G, bool track_cofactors) {
    const MonomialOrder ord = f.order();
    auto desc = [ord](const Monomial& a, const Monomial& b) { return ord.less(b, a); };
    std::map<Monomial, Rat, decltype(desc)> work(desc);
    for (const auto& [m, c] : f.terms()) work.emplace(m, c);

    std::vector<Polynomial::Term> nf_terms;
    std::vector<std::vector<Polynomial::Term>> cof;
    if (track_cofactors) cof.assign(G.size(), {});

    while (!work.empty()) {
        auto lead = work.begin();
        Monomial lm = lead->first;
        Rat lc = lead->second;
        bool reduced = false;
        for (size_t i = 0; i < G.size(); ++i) {
            if (G[i].is_zero()) continue;
            const Monomial& gm = G[i].leading_monomial();
            if (!gm.divides(lm)) continue;
            Monomial q = lm.quotient(gm);
            Rat c = lc / G[i].leading_coeff();
            work.erase(lead);
            const auto& terms = G[i].terms();
            for (size_t t = 1; t < terms.size(); ++t) {
                Monomial m = terms[t].first.mul(q);
                auto [it, fresh] = work.emplace(m, Rat(0));
                it->second -= c * terms[t].second;
                if (sgn(it->second) == 0) work.erase(it);
            }
            if (track_cofactors) cof[i].emplace_back(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            nf_terms.emplace_back(lm, lc);
            work.erase(lead);
        }
    }
    DivisionResult res;
    res.nf = Polynomial::from_terms(f.space(), ord, std::move(nf_terms));
    if (track_cofactors)
        for (auto& terms : cof)
            res.cofactors.push_back(Polynomial::from_terms(f.space(), ord, std::move(terms)));
    return res;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> G) {
    return divide(f, G, false).nf;
}

namespace {

Polynomial spoly(const Polynomial& f, const Polynomial& g) {
    Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
    Monomial qf = l.quotient(f.leading_monomial());
    Monomial qg = l.quotient(g.leading_monomial());
    return f.mul_term(qf, Rat(1) / f.leading_coeff()) -
           g.mul_term(qg, Rat(1) / g.leading_coeff());
}

std::vector<Polynomial> reduce_basis(std::vector<Polynomial> G) {
    // minimalize: drop generators whose leading monomial is divisible by
    // another's
    std::sort(G.begin(), G.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.order().less(a.leading_monomial(), b.leading_monomial());
    });
    std::vector<Polynomial> minimal;
    for (const Polynomial& g : G) {
        bool redundant = false;
        for (const Polynomial& h : minimal)
            if (h.leading_monomial().divides(g.leading_monomial())) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(g);
    }
    // inter-reduce tails
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = normal_form(minimal[i], others).monic();
    }
    std::sort(minimal.begin(), minimal.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.order().less(a.leading_monomial(), b.leading_monomial());
    });
    return minimal;
}

}  // namespace

std::vector<Polynomial> buchberger(std::vector<Polynomial> gens) {
    std::vector<Polynomial> G;
    for (Polynomial& g : gens)
        if (!g.is_zero()) G.push_back(g.monic());
    if (G.empty()) return G;
    const MonomialOrder ord = G[0].order();

    struct Pair {
        size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> pending;
    std::set<std::pair<size_t, size_t>> handled;
    auto push_pairs = [&](size_t k) {
        for (size_t i = 0; i < k; ++i)
            pending.push_back({i, k, Monomial::lcm(G[i].leading_monomial(),
                                                   G[k].leading_monomial())});
    };
    for (size_t k = 1; k < G.size(); ++k) push_pairs(k);

    while (!pending.empty()) {
        // normal selection: smallest lcm, ties by index
        size_t best = 0;
        for (size_t k = 1; k < pending.size(); ++k) {
            if (ord.less(pending[k].lcm, pending[best].lcm) ||
                (pending[k].lcm == pending[best].lcm &&
                 std::tie(pending[k].i, pending[k].j) < std::tie(pending[best].i, pending[best].j)))
                best = k;
        }
        Pair pr = pending[best];
        pending.erase(pending.begin() + best);
        handled.insert({pr.i, pr.j});

        // product criterion
        if (G[pr.i].leading_monomial().coprime(G[pr.j].leading_monomial())) continue;
        // chain criterion: some k with lm(k) | lcm(i,j) and both pairs done
        bool skip = false;
        for (size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!G[k].leading_monomial().divides(pr.lcm)) continue;
            auto key1 = std::minmax(pr.i, k);
            auto key2 = std::minmax(pr.j, k);
            if (handled.count({key1.first, key1.second}) &&
                handled.count({key2.first, key2.second}))
                skip = true;
        }
        if (skip) continue;

        Polynomial r = normal_form(spoly(G[pr.i], G[pr.j]), G);
        if (r.is_zero()) continue;
        if (r.is_constant())
            return {Polynomial::constant(r.space(), Rat(1), r.order())};
        G.push_back(r.monic());
        push_pairs(G.size() - 1);
    }
    std::vector<Polynomial> reduced = reduce_basis(std::move(G));
    for (const Polynomial& g : reduced)
        if (!g.is_zero() && g.is_constant())
            return {Polynomial::constant(g.space(), Rat(1), g.order())};
    return reduced;
}

bool member(const Polynomial& f, std::span<const Polynomial> gb) {
    return normal_form(f, gb).is_zero();
}

std::vector<Polynomial> ideal_sum(std::span<const Polynomial> a, std::span<const Polynomial> b) {
    std::vector<Polynomial> gens(a.begin(), a.end());
    gens.insert(gens.end(), b.begin(), b.end());
    return buchberger(std::move(gens));
}

Polynomial rename_vars(const Polynomial& f, SpacePtr target, std::span<const int> var_map,
                       MonomialOrder order) {
    std::vector<Polynomial::Term> terms;
    for (const auto& [m, c] : f.terms()) {
        Monomial t = Monomial::one(target->size());
        for (size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i]) t.e.at(var_map[i]) += m.e[i];
        terms.emplace_back(std::move(t), c);
    }
    return Polynomial::from_terms(std::move(target), order, std::move(terms));
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
    if (images.size() != f.space()->size())
        throw std::invalid_argument("substitute needs one image per variable");
    SpacePtr target;
    MonomialOrder order = kGrlex;
    if (!images.empty()) {
        target = images[0].space();
        order = images[0].order();
    }
    if (!target) target = f.space();
    // cache powers per variable
    std::vector<std::vector<Polynomial>> pows(images.size());
    auto power = [&](size_t i, uint32_t k) -> const Polynomial& {
        auto& cache = pows[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, Rat(1), order));
        while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
        return cache[k];
    };
    Polynomial out = Polynomial::zero(target, order);
    for (const auto& [m, c] : f.terms()) {
        Polynomial term = Polynomial::constant(target, c, order);
        for (size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i]) term = term * power(i, m.e[i]);
        out = out + term;
    }
    return out;
}

std::vector<Polynomial> eliminate(std::vector<Polynomial> gens, size_t drop, SpacePtr target) {
    if (gens.empty()) return {};
    size_t total = gens[0].space()->size();
    if (target->size() != total - drop)
        throw std::invalid_argument("eliminate: target space has wrong size");
    MonomialOrder elim{drop};
    for (Polynomial& g : gens) g = g.reordered(elim);
    std::vector<Polynomial> gb = buchberger(std::move(gens));
    std::vector<int> var_map(total, 0);
    for (size_t i = drop; i < total; ++i) var_map[i] = static_cast<int>(i - drop);
    std::vector<Polynomial> out;
    for (const Polynomial& g : gb) {
        bool block_free = true;
        for (const auto& [m, c] : g.terms())
            for (size_t i = 0; i < drop && block_free; ++i)
                if (m.e[i]) block_free = false;
        if (block_free) out.push_back(rename_vars(g, target, var_map, kGrlex));
    }
    return buchberger(std::move(out));
}

std::vector<Polynomial> degree_truncate(std::vector<Polynomial> gens, int d) {
    if (gens.empty()) return {};
    if (!gens[0].order().graded())
        throw std::invalid_argument("degree_truncate needs a graded order");
    std::vector<Polynomial> gb = buchberger(std::move(gens));
    std::vector<Polynomial> kept;
    for (const Polynomial& g : gb)
        if (g.degree() <= d) kept.push_back(g);
    return buchberger(std::move(kept));
}

std::vector<Polynomial> intersect(std::span<const Polynomial> I, std::span<const Polynomial> J) {
    if (I.empty() || J.empty()) return {};  // zero ideal intersected with anything
    SpacePtr base = I[0].space();
    std::vector<std::string> names;
    names.push_back("t!");
    for (const std::string& n : base->names) names.push_back(n);
    SpacePtr ext = make_space(std::move(names));
    std::vector<int> shift(base->size());
    for (size_t i = 0; i < base->size(); ++i) shift[i] = static_cast<int>(i + 1);

    MonomialOrder elim{1};
    Polynomial t = Polynomial::variable(ext, 0, elim);
    Polynomial one_minus_t = Polynomial::constant(ext, Rat(1), elim) - t;
    std::vector<Polynomial> gens;
    for (const Polynomial& f : I) gens.push_back(t * rename_vars(f, ext, shift, elim));
    for (const Polynomial& g : J) gens.push_back(one_minus_t * rename_vars(g, ext, shift, elim));
    return eliminate(std::move(gens), 1, base);
}

std::vector<Polynomial> vanishing_ideal(const std::vector<std::vector<Rat>>& points,
                                        SpacePtr space) {
    size_t n = space->size();
    for (const auto& p : points)
        if (p.size() != n) throw std::invalid_argument("point has wrong dimension");
    MonomialOrder ord = kGrlex;
    auto asc = [ord](const Monomial& a, const Monomial& b) { return ord.less(a, b); };
    std::set<Monomial, decltype(asc)> candidates(asc);
    candidates.insert(Monomial::one(n));

    struct Row {
        std::vector<Rat> vec;
        Polynomial q;
        size_t pivot;
    };
    std::vector<Row> rows;
    std::vector<Polynomial> G;

    auto divisible_by_lt = [&](const Monomial& m) {
        for (const Polynomial& g : G)
            if (g.leading_monomial().divides(m)) return true;
        return false;
    };

    while (!candidates.empty()) {
        Monomial m = *candidates.begin();
        candidates.erase(candidates.begin());
        if (divisible_by_lt(m)) continue;

        std::vector<Rat> v(points.size());
        for (size_t i = 0; i < points.size(); ++i) {
            Rat prod(1);
            for (size_t j = 0; j < n; ++j)
                for (uint32_t k = 0; k < m.e[j]; ++k) prod *= points[i][j];
            v[i] = prod;
        }
        Polynomial q = Polynomial::from_terms(space, ord, {{m, Rat(1)}});
        for (const Row& row : rows) {
            const Rat& c = v[row.pivot];
            if (sgn(c) == 0) continue;
            for (size_t i = 0; i < v.size(); ++i) v[i] -= c * row.vec[i];
            q = q - row.q.scaled(c);
        }
        bool zero = true;
        size_t pivot = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) {
                zero = false;
                pivot = i;
                break;
            }
        if (zero) {
            G.push_back(q);  // leading coefficient is 1 by construction
        } else {
            Rat inv = Rat(1) / v[pivot];
            for (Rat& x : v) x *= inv;
            q = q.scaled(inv);
            rows.push_back({std::move(v), std::move(q), pivot});
            for (size_t j = 0; j < n; ++j) {
                Monomial cand = m.mul(Monomial::var(n, j));
                if (!divisible_by_lt(cand)) candidates.insert(cand);
            }
        }
    }
    return buchberger(std::move(G));
}

bool same_ideal(std::span<const Polynomial> gb1, std::span<const Polynomial> gb2) {
    for (const Polynomial& g : gb1)
        if (!member(g, gb2)) return false;
    for (const Polynomial& g : gb2)
        if (!member(g, gb1)) return false;
    return true;
}

}  // namespace treq
