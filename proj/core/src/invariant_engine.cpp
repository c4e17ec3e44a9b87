#include "treq/invariant_engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace treq {

namespace {

// ---------------------------------------------------------------- helpers

bool is_unit_ideal(const std::vector<Polynomial>& gb) {
    return gb.size() == 1 && !gb[0].is_zero() && gb[0].is_constant();
}

std::vector<int> block_map(const PolySystem& sys, int block) {
    std::vector<int> map(sys.dim);
    for (int j = 0; j < sys.dim; ++j) map[j] = sys.xvar(block, j);
    return map;
}

// Children bases renamed into disjoint argument blocks. Each child basis is
// a Gröbner basis, and disjoint-block unions of Gröbner bases are Gröbner
// bases (all cross S-pairs have coprime leading monomials).
std::vector<Polynomial> union_basis(const PolySystem& sys, int rank,
                                    const std::vector<std::vector<Polynomial>>& children) {
    const SpacePtr& xspace = sys.xspaces[rank];
    std::vector<Polynomial> U;
    for (int i = 0; i < rank; ++i) {
        std::vector<int> map = block_map(sys, i + 1);
        for (const Polynomial& g : children[i])
            U.push_back(rename_vars(g, xspace, map, kGrlex));
    }
    return U;
}

// All z-monomials of total degree <= d, ascending grlex.
std::vector<Monomial> monomials_up_to(const SpacePtr& space, int d) {
    std::vector<Monomial> out;
    Monomial cur = Monomial::one(space->size());
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i == space->size()) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur.e[i] = static_cast<uint32_t>(e);
            rec(i + 1, left - e);
        }
        cur.e[i] = 0;
    };
    rec(0, d);
    MonomialOrder ord = kGrlex;
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
    return out;
}

// ------------------------------------------------- dense exact linear algebra

using Row = std::vector<Rat>;

struct Rref {
    std::vector<std::pair<size_t, Row>> rows;  // (pivot column, normalized row)

    // Returns false if the row reduced to zero.
    bool insert(Row r) {
        for (const auto& [pc, rr] : rows) {
            const Rat& c = r[pc];
            if (sgn(c) == 0) continue;
            Rat f = c;
            for (size_t i = 0; i < r.size(); ++i)
                if (sgn(rr[i]) != 0) r[i] -= f * rr[i];
        }
        size_t pivot = r.size();
        for (size_t i = 0; i < r.size(); ++i)
            if (sgn(r[i]) != 0) {
                pivot = i;
                break;
            }
        if (pivot == r.size()) return false;
        Rat inv = Rat(1) / r[pivot];
        for (Rat& x : r) x *= inv;
        for (auto& [pc, rr] : rows) {
            const Rat& c = rr[pivot];
            if (sgn(c) == 0) continue;
            Rat f = c;
            for (size_t i = 0; i < rr.size(); ++i)
                if (sgn(r[i]) != 0) rr[i] -= f * r[i];
        }
        rows.emplace_back(pivot, std::move(r));
        std::sort(rows.begin(), rows.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return true;
    }

    size_t rank() const { return rows.size(); }
};

// Basis of {c | rows · c = 0} for equations over `cols` unknowns.
std::vector<Row> nullspace(const std::vector<Row>& equations, size_t cols) {
    Rref rref;
    for (const Row& eq : equations) {
        rref.insert(eq);
        if (rref.rank() == cols) break;
    }
    std::vector<bool> is_pivot(cols, false);
    for (const auto& [pc, r] : rref.rows) is_pivot[pc] = true;
    std::vector<Row> basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        Row c(cols, Rat(0));
        c[fc] = 1;
        for (const auto& [pc, r] : rref.rows) c[pc] = -r[fc];
        basis.push_back(std::move(c));
    }
    return basis;
}

Polynomial poly_from_coeffs(const SpacePtr& space, const std::vector<Monomial>& monos,
                            const Row& c) {
    std::vector<Polynomial::Term> terms;
    for (size_t i = 0; i < monos.size(); ++i)
        if (sgn(c[i]) != 0) terms.emplace_back(monos[i], c[i]);
    return Polynomial::from_terms(space, kGrlex, std::move(terms));
}

// Span of the degree-<=d part of an ideal given by a graded reduced basis:
// all g·m with deg(g·m) <= d, as coefficient rows over `monos`.
std::vector<Row> degree_part_rows(const std::vector<Polynomial>& gb,
                                  const std::vector<Monomial>& monos,
                                  const std::map<std::vector<uint32_t>, size_t>& mono_index,
                                  const SpacePtr& space, int d) {
    std::vector<Row> rows;
    for (const Polynomial& g : gb) {
        int dg = g.degree();
        if (dg < 0 || dg > d) continue;
        for (const Monomial& m : monomials_up_to(space, d - dg)) {
            Polynomial gm = g.mul_term(m, Rat(1));
            Row row(monos.size(), Rat(0));
            for (const auto& [mm, c] : gm.terms()) row[mono_index.at(mm.e)] = c;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// Meet in the degree-d lattice: the ideal generated by the intersection of
// the degree-<=d parts (Zassenhaus on the stacked spans).
std::vector<Polynomial> truncated_meet(const std::vector<Polynomial>& a,
                                       const std::vector<Polynomial>& b, const SpacePtr& zspace,
                                       int d) {
    if (a.empty() || b.empty()) return {};
    if (is_unit_ideal(a)) return b;
    if (is_unit_ideal(b)) return a;
    std::vector<Monomial> monos = monomials_up_to(zspace, d);
    std::map<std::vector<uint32_t>, size_t> mono_index;
    for (size_t i = 0; i < monos.size(); ++i) mono_index.emplace(monos[i].e, i);
    size_t K = monos.size();

    std::vector<Row> ra = degree_part_rows(a, monos, mono_index, zspace, d);
    std::vector<Row> rb = degree_part_rows(b, monos, mono_index, zspace, d);

    Rref rref;
    std::vector<Row> stacked;
    for (Row& r : ra) {
        Row w(2 * K, Rat(0));
        for (size_t i = 0; i < K; ++i) {
            w[i] = r[i];
            w[K + i] = r[i];
        }
        rref.insert(std::move(w));
    }
    // For b-rows, eliminate on the left half; rows that become zero on the
    // left carry an intersection element on the right.
    std::vector<Polynomial> gens;
    for (Row& r : rb) {
        Row w(2 * K, Rat(0));
        for (size_t i = 0; i < K; ++i) w[i] = r[i];
        // reduce left half against rref rows with pivot < K
        for (const auto& [pc, rr] : rref.rows) {
            if (pc >= K) continue;
            const Rat& c = w[pc];
            if (sgn(c) == 0) continue;
            Rat f = c;
            for (size_t i = 0; i < 2 * K; ++i)
                if (sgn(rr[i]) != 0) w[i] -= f * rr[i];
        }
        bool left_zero = true;
        for (size_t i = 0; i < K && left_zero; ++i)
            if (sgn(w[i]) != 0) left_zero = false;
        if (left_zero) {
            Row right(w.begin() + K, w.end());
            gens.push_back(poly_from_coeffs(zspace, monos, right));
        } else {
            rref.insert(std::move(w));
        }
    }
    return buchberger(std::move(gens));
}

}  // namespace

// --------------------------------------------------------------- public API

bool is_inductive(const InvariantMap& I, const PolySystem& sys, const Dtta& A) {
    for (const auto& [key, kids] : A.rules()) {
        auto it = I.ideal.find(key.first);
        if (it == I.ideal.end() || it->second.empty()) continue;  // zero ideal: nothing to check
        int m = static_cast<int>(kids.size());
        std::vector<std::vector<Polynomial>> children;
        for (State c : kids) {
            auto ci = I.ideal.find(c);
            children.push_back(ci == I.ideal.end() ? std::vector<Polynomial>{} : ci->second);
        }
        std::vector<Polynomial> U = union_basis(sys, m, children);
        for (const Polynomial& g : it->second) {
            Polynomial pre = wp(g, key.second, sys);
            if (!normal_form(pre, U).is_zero()) return false;
        }
    }
    return true;
}

std::vector<Polynomial> symbolic_preimage(const PolySystem& sys, SymbolId f,
                                          const std::vector<std::vector<Polynomial>>& children) {
    int m = sys.alpha->rank(f);
    for (const auto& c : children)
        if (is_unit_ideal(c)) return {Polynomial::constant(sys.zspace, Rat(1))};

    // combined space: argument blocks first, then z
    std::vector<std::string> names = sys.xspaces[m]->names;
    for (const std::string& n : sys.zspace->names) names.push_back(n);
    SpacePtr combined = make_space(std::move(names));
    size_t drop = sys.xspaces[m]->size();

    std::vector<int> xmap(drop);
    for (size_t i = 0; i < drop; ++i) xmap[i] = static_cast<int>(i);
    std::vector<int> zmap(sys.dim);
    for (int j = 0; j < sys.dim; ++j) zmap[j] = static_cast<int>(drop + j);

    MonomialOrder elim{drop};
    std::vector<Polynomial> gens;
    const auto& coords = sys.sem.at(f);
    for (int j = 0; j < sys.dim; ++j) {
        Polynomial zj = Polynomial::variable(combined, drop + j, elim);
        Polynomial rj = rename_vars(coords[j], combined, xmap, elim);
        gens.push_back(zj - rj);
    }
    for (int i = 0; i < m; ++i) {
        std::vector<int> bmap = block_map(sys, i + 1);
        std::vector<int> cmap(sys.dim);
        for (int j = 0; j < sys.dim; ++j) cmap[j] = bmap[j];
        for (const Polynomial& g : children[i])
            gens.push_back(rename_vars(g, combined, cmap, elim));
    }
    return eliminate(std::move(gens), drop, sys.zspace);
}

std::vector<Polynomial> truncated_preimage(const PolySystem& sys, SymbolId f,
                                           const std::vector<std::vector<Polynomial>>& children,
                                           int d) {
    int m = sys.alpha->rank(f);
    for (const auto& c : children)
        if (is_unit_ideal(c)) return {Polynomial::constant(sys.zspace, Rat(1))};

    std::vector<Monomial> monos = monomials_up_to(sys.zspace, d);
    size_t K = monos.size();
    const auto& coords = sys.sem.at(f);

    if (m == 0) {
        // single evaluation point; one linear condition on the coefficients
        std::vector<Rat> point(sys.dim);
        std::vector<Rat> empty;
        for (int j = 0; j < sys.dim; ++j) point[j] = coords[j].evaluate(empty);
        std::vector<Polynomial> gens;
        for (size_t i = 0; i < K; ++i) {
            if (monos[i].is_one()) continue;
            Rat value(1);
            for (int j = 0; j < sys.dim; ++j)
                for (uint32_t k = 0; k < monos[i].e[j]; ++k) value *= point[j];
            gens.push_back(Polynomial::from_terms(
                sys.zspace, kGrlex, {{monos[i], Rat(1)}, {Monomial::one(sys.dim), -value}}));
        }
        return buchberger(std::move(gens));
    }

    std::vector<Polynomial> U = union_basis(sys, m, children);
    std::sort(U.begin(), U.end(), [](const Polynomial& x, const Polynomial& y) {
        return x.order().less(x.leading_monomial(), y.leading_monomial());
    });
    std::vector<Polynomial> nf_coord;
    for (int j = 0; j < sys.dim; ++j) nf_coord.push_back(normal_form(coords[j], U));

    // nf_table[i] = normal form of the substituted monomial monos[i]
    const SpacePtr& xspace = sys.xspaces[m];
    std::vector<Polynomial> nf_table(K, Polynomial::zero(xspace));
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < K; ++i) index.emplace(monos[i].e, i);
    for (size_t i = 0; i < K; ++i) {
        if (monos[i].is_one()) {
            nf_table[i] = Polynomial::constant(xspace, Rat(1));
            continue;
        }
        int var = -1;
        for (int j = 0; j < sys.dim; ++j)
            if (monos[i].e[j]) {
                var = j;
                break;
            }
        Monomial prev = monos[i];
        prev.e[var] -= 1;
        const Polynomial& rest = nf_table[index.at(prev.e)];
        nf_table[i] = normal_form(rest * nf_coord[var], U);
    }

    // equations: for every x-monomial, the combined coefficient must vanish
    std::map<std::vector<uint32_t>, size_t> row_index;
    for (const Polynomial& p : nf_table)
        for (const auto& [mm, c] : p.terms())
            row_index.emplace(mm.e, row_index.size());
    std::vector<Row> equations(row_index.size(), Row(K, Rat(0)));
    for (size_t i = 0; i < K; ++i)
        for (const auto& [mm, c] : nf_table[i].terms())
            equations[row_index.at(mm.e)][i] = c;

    std::vector<Row> basis = nullspace(equations, K);
    std::vector<Polynomial> gens;
    for (const Row& c : basis) gens.push_back(poly_from_coeffs(sys.zspace, monos, c));
    return buchberger(std::move(gens));
}

long long count_dom(const Dtta& A, State p, int d, long long cap) {
    // cumulative counts c[p][k] = |dom_k(p)|, saturating at cap
    std::vector<std::vector<long long>> c(A.state_count(), std::vector<long long>(d + 1, 0));
    for (int k = 1; k <= d; ++k) {
        for (State q = 0; q < A.state_count(); ++q) {
            long long total = 0;
            for (const auto& [key, kids] : A.rules()) {
                if (key.first != q) continue;
                long long prod = 1;
                for (State ch : kids) {
                    prod *= std::min(c[ch][k - 1], cap);
                    if (prod >= cap) {
                        prod = cap;
                        break;
                    }
                }
                if (kids.empty()) prod = k >= 1 ? 1 : 0;
                total = std::min(total + prod, cap);
            }
            c[q][k] = total;
        }
    }
    return c[p][d];
}

InvariantMap counterexample_pass(const PolySystem& sys, const Dtta& A, int d, int point_switch,
                                 long long max_points) {
    InvariantMap out;
    bool use_points = d <= point_switch;
    if (use_points)
        for (State p = 0; p < A.state_count() && use_points; ++p)
            if (count_dom(A, p, d, max_points) >= max_points) use_points = false;

    if (use_points) {
        for (State p = 0; p < A.state_count(); ++p) {
            std::set<std::vector<Rat>> points;
            for (const Tree& t : enumerate_dom(A, p, d)) points.insert(sys.eval_tree(t));
            out.ideal[p] =
                vanishing_ideal(std::vector<std::vector<Rat>>(points.begin(), points.end()),
                                sys.zspace);
        }
        return out;
    }

    // greatest-fixpoint step, iterated d times from the unit ideals
    InvariantMap cur;
    for (State p = 0; p < A.state_count(); ++p)
        cur.ideal[p] = {Polynomial::constant(sys.zspace, Rat(1))};
    for (int step = 0; step < d; ++step) {
        InvariantMap next;
        for (State p = 0; p < A.state_count(); ++p) {
            std::vector<Polynomial> acc = {Polynomial::constant(sys.zspace, Rat(1))};
            bool first = true;
            for (const auto& [key, kids] : A.rules()) {
                if (key.first != p) continue;
                std::vector<std::vector<Polynomial>> children;
                for (State c : kids) children.push_back(cur.ideal.at(c));
                std::vector<Polynomial> pre = symbolic_preimage(sys, key.second, children);
                acc = first ? pre : intersect(acc, pre);
                first = false;
            }
            next.ideal[p] = std::move(acc);
        }
        cur = std::move(next);
    }
    return cur;
}

InvariantMap invariant_pass(const PolySystem& sys, const Dtta& A, int d) {
    InvariantMap I;
    for (State p = 0; p < A.state_count(); ++p)
        I.ideal[p] = {Polynomial::constant(sys.zspace, Rat(1))};

    struct Trans {
        State p;
        SymbolId f;
        const std::vector<State>* kids;
        std::vector<long> seen_versions;
        std::vector<Polynomial> memo;
    };
    std::vector<Trans> transitions;
    for (const auto& [key, kids] : A.rules())
        transitions.push_back({key.first,
                               key.second,
                               &kids,
                               std::vector<long>(kids.size(), -1),
                               {}});
    std::vector<long> version(A.state_count(), 0);

    bool changed = true;
    int guard = 0;
    while (changed) {
        changed = false;
        if (++guard > 10000) throw std::runtime_error("invariant pass failed to stabilize");
        for (State p = 0; p < A.state_count(); ++p) {
            std::vector<Polynomial> acc;
            bool first = true;
            bool has_rule = false;
            for (Trans& tr : transitions) {
                if (tr.p != p) continue;
                has_rule = true;
                std::vector<long> vs;
                for (State c : *tr.kids) vs.push_back(version[c]);
                if (vs != tr.seen_versions) {
                    std::vector<std::vector<Polynomial>> children;
                    for (State c : *tr.kids) children.push_back(I.ideal.at(c));
                    tr.memo = truncated_preimage(sys, tr.f, children, d);
                    tr.seen_versions = std::move(vs);
                }
                acc = first ? tr.memo : truncated_meet(acc, tr.memo, sys.zspace, d);
                first = false;
            }
            if (!has_rule) continue;  // no constraints; stays the unit ideal
            if (!same_ideal(acc, I.ideal.at(p))) {
                I.ideal[p] = std::move(acc);
                ++version[p];
                changed = true;
            }
        }
    }
    return I;
}

namespace {

Tree chain_to_tree(const std::vector<SymbolId>& word, SymbolId leaf) {
    Tree t(leaf);
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = Tree(*it, {t});
    return t;
}

}  // namespace

EngineVerdict monadic_decide(const PolySystem& sys, const Dtta& A,
                             const std::vector<Polynomial>& targets, long long max_generators) {
    if (sys.alpha->max_rank() > 1)
        throw std::invalid_argument("monadic_decide needs a monadic input alphabet");

    struct Gen {
        Polynomial poly;
        std::vector<SymbolId> word;  // demand chain from the initial state
    };
    std::vector<std::vector<Gen>> gens(A.state_count());
    std::vector<std::vector<Polynomial>> gb(A.state_count());
    std::deque<std::pair<State, size_t>> work;
    long long total = 0;

    // nullary transitions per state, with the constant value vector r^(b)
    std::vector<std::vector<std::pair<SymbolId, std::vector<Rat>>>> leaves(A.state_count());
    for (const auto& [key, kids] : A.rules()) {
        if (!kids.empty()) continue;
        std::vector<Rat> point(sys.dim);
        std::vector<Rat> empty;
        const auto& coords = sys.sem.at(key.second);
        for (int j = 0; j < sys.dim; ++j) point[j] = coords[j].evaluate(empty);
        leaves[key.first].emplace_back(key.second, std::move(point));
    }

    EngineVerdict verdict;
    verdict.engine = "monadic";

    // Eager nullary test: a generator violating r(r^(b)) = 0 yields an
    // immediate witness (its demand chain ending in b).
    auto add_gen = [&](State p, Polynomial g,
                       std::vector<SymbolId> word) -> std::optional<Tree> {
        if (g.is_zero() || member(g, gb[p])) return std::nullopt;
        for (const auto& [b, point] : leaves[p])
            if (sgn(g.evaluate(point)) != 0) return chain_to_tree(word, b);
        gens[p].push_back({std::move(g), std::move(word)});
        gb[p] = buchberger([&] {
            std::vector<Polynomial> gs;
            for (const Gen& gen : gens[p]) gs.push_back(gen.poly);
            return gs;
        }());
        work.emplace_back(p, gens[p].size() - 1);
        if (++total > max_generators)
            throw std::runtime_error("monadic fixpoint exceeded the generator safety cap");
        return std::nullopt;
    };

    for (const Polynomial& h : targets)
        if (auto w = add_gen(A.initial(), h, {})) {
            verdict.kind = VerdictKind::NotEquivalent;
            verdict.witness = std::move(*w);
            return verdict;
        }

    while (!work.empty()) {
        auto [p, gi] = work.front();
        work.pop_front();
        Gen gen = gens[p][gi];  // copy: gens[p] may grow below
        for (const auto& [key, kids] : A.rules()) {
            if (key.first != p || kids.empty()) continue;
            Polynomial moved = wp_monadic(gen.poly, key.second, sys);
            std::vector<SymbolId> word = gen.word;
            word.push_back(key.second);
            if (auto w = add_gen(kids[0], std::move(moved), std::move(word))) {
                verdict.kind = VerdictKind::NotEquivalent;
                verdict.witness = std::move(*w);
                return verdict;
            }
        }
    }

    verdict.kind = VerdictKind::Equivalent;
    for (State p = 0; p < A.state_count(); ++p) verdict.certificate.ideal[p] = gb[p];
    for (State p = 0; p < A.state_count(); ++p)
        for (const Polynomial& g : gb[p])
            verdict.certificate_degree = std::max(verdict.certificate_degree, g.degree());
    return verdict;
}

EngineVerdict twin_decide(const PolySystem& sys, const Dtta& A,
                          const std::vector<Polynomial>& targets, const TwinBudget& budget) {
    EngineVerdict verdict;
    verdict.engine = "invariant";

    auto find_witness = [&](int d) -> Tree {
        // layered search: the first violating tree at the smallest depth
        for (int k = 1; k <= d; ++k) {
            for (const Tree& t : enumerate_dom(A, A.initial(), k)) {
                if (tree_depth(t) != k) continue;
                std::vector<Rat> v = sys.eval_tree(t);
                for (const Polynomial& h : targets)
                    if (sgn(h.evaluate(v)) != 0) return t;
            }
        }
        throw std::logic_error("trigger without witness");
    };

    for (int d = 1; d <= budget.max_degree; ++d) {
        verdict.depth_reached = d;
        InvariantMap bar = counterexample_pass(sys, A, d, budget.point_switch, budget.max_points);
        const auto& bar0 = bar.ideal.at(A.initial());
        for (const Polynomial& h : targets) {
            if (!member(h, bar0)) {
                verdict.kind = VerdictKind::NotEquivalent;
                verdict.witness = find_witness(d);
                return verdict;
            }
        }
        InvariantMap inv = invariant_pass(sys, A, d);
        bool all_in = true;
        for (const Polynomial& h : targets)
            if (!member(h, inv.ideal.at(A.initial()))) {
                all_in = false;
                break;
            }
        if (all_in) {
            verdict.kind = VerdictKind::Equivalent;
            verdict.certificate = std::move(inv);
            verdict.certificate_degree = d;
            return verdict;
        }
    }
    verdict.kind = VerdictKind::Unknown;
    return verdict;
}

}  // namespace treq
