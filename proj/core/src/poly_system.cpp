#include "treq/poly_system.hpp"

#include <stdexcept>

namespace treq {

namespace {

std::vector<std::string> coordinate_suffixes_numeric(const Transducer& M) {
    std::vector<std::string> out;
    for (State q = 0; q < M.state_count(); ++q)
        for (int k = 0; k <= M.param_count(); ++k)
            out.push_back(std::to_string(q + 1) + "," + std::to_string(k));
    return out;
}

std::vector<std::string> coordinate_suffixes_matrix(const Transducer& M, int l) {
    std::vector<std::string> out;
    for (State q = 0; q < M.state_count(); ++q)
        for (int lam = 1; lam <= l; ++lam)
            for (int mu = 1; mu <= l; ++mu)
                out.push_back(std::to_string(q + 1) + "," + std::to_string(lam) + "," +
                              std::to_string(mu));
    return out;
}

void build_spaces(PolySystem& sys, const std::vector<std::string>& suffixes) {
    sys.dim = static_cast<int>(suffixes.size());
    std::vector<std::string> znames;
    for (const std::string& s : suffixes) znames.push_back("z[" + s + "]");
    sys.zspace = make_space(std::move(znames));
    int max_rank = sys.alpha->max_rank();
    sys.xspaces.resize(max_rank + 1);
    for (int m = 0; m <= max_rank; ++m) {
        std::vector<std::string> xnames;
        for (int i = 1; i <= m; ++i)
            for (const std::string& s : suffixes)
                xnames.push_back("x[" + std::to_string(i) + "," + s + "]");
        sys.xspaces[m] = make_space(std::move(xnames));
    }
}

// Value of a numeric rhs as an affine function of the parameters with
// polynomial coefficients over the argument-block variables.
std::vector<Polynomial> symbolic_rhs(const Transducer& M, const Rhs& r, const SpacePtr& xspace,
                                     int dim) {
    int l = M.param_count();
    auto zero = [&] {
        return std::vector<Polynomial>(l + 1, Polynomial::zero(xspace));
    };
    switch (r.kind) {
        case Rhs::Kind::Const: {
            auto v = zero();
            v[0] = Polynomial::constant(xspace, Rat(static_cast<long>(r.num)));
            return v;
        }
        case Rhs::Kind::Param: {
            auto v = zero();
            v[r.num] = Polynomial::constant(xspace, Rat(1));
            return v;
        }
        case Rhs::Kind::Add: {
            auto v = zero();
            for (const Rhs& a : r.args) {
                auto t = symbolic_rhs(M, a, xspace, dim);
                for (int k = 0; k <= l; ++k) v[k] = v[k] + t[k];
            }
            return v;
        }
        case Rhs::Kind::Mul: {
            auto v = symbolic_rhs(M, r.args[0], xspace, dim);
            for (int k = 0; k <= l; ++k) v[k] = v[k].scaled(Rat(static_cast<long>(r.num)));
            return v;
        }
        case Rhs::Kind::Call: {
            auto v = zero();
            std::vector<std::vector<Polynomial>> ps;
            for (const Rhs& a : r.args) ps.push_back(symbolic_rhs(M, a, xspace, dim));
            int block = static_cast<int>(r.num);
            int base = (block - 1) * dim + r.state * (l + 1);
            v[0] = Polynomial::variable(xspace, base);
            for (int k = 1; k <= l; ++k) {
                Polynomial coeff = Polynomial::variable(xspace, base + k);
                for (int j = 0; j <= l; ++j) v[j] = v[j] + coeff * ps[k - 1][j];
            }
            return v;
        }
        default:
            throw std::invalid_argument("string construct in numeric rule");
    }
}

}  // namespace

std::vector<Rat> PolySystem::eval_tree(const Tree& t) const {
    std::vector<Rat> point;
    for (const Tree& k : t.kids) {
        std::vector<Rat> v = eval_tree(k);
        point.insert(point.end(), v.begin(), v.end());
    }
    auto it = sem.find(t.sym);
    if (it == sem.end()) throw std::invalid_argument("symbol without semantics");
    std::vector<Rat> out(dim);
    for (int j = 0; j < dim; ++j) out[j] = it->second[j].evaluate(point);
    return out;
}

PolySystem make_poly_system(const Transducer& M) {
    if (M.mode() != OutputMode::Numeric)
        throw std::invalid_argument("poly system needs a numeric transducer");
    if (!classify(M).total) throw std::invalid_argument("poly system needs a total transducer");
    PolySystem sys;
    sys.alpha = M.input_ptr();
    build_spaces(sys, coordinate_suffixes_numeric(M));
    int l = M.param_count();
    for (SymbolId f = 0; f < M.input().size(); ++f) {
        int m = M.input().rank(f);
        const SpacePtr& xspace = sys.xspaces[m];
        std::vector<Polynomial> coords;
        coords.reserve(sys.dim);
        for (State q = 0; q < M.state_count(); ++q) {
            auto row = symbolic_rhs(M, *M.rule(q, f), xspace, sys.dim);
            for (int k = 0; k <= l; ++k) coords.push_back(std::move(row[k]));
        }
        sys.sem.emplace(f, std::move(coords));
    }
    return sys;
}

std::vector<std::vector<Polynomial>> symbol_semantics(const Transducer& M, SymbolId f) {
    PolySystem sys = make_poly_system(M);
    int l = M.param_count();
    std::vector<std::vector<Polynomial>> rows(M.state_count());
    const auto& coords = sys.sem.at(f);
    for (State q = 0; q < M.state_count(); ++q)
        for (int k = 0; k <= l; ++k) rows[q].push_back(coords[q * (l + 1) + k]);
    return rows;
}

namespace {

std::vector<Polynomial> matrix_rhs(const Transducer& M, const MatrixInterp& interp, const Rhs& r,
                                   const SpacePtr& xspace, int dim) {
    int l = interp.msize;
    auto identity = [&] {
        std::vector<Polynomial> m(l * l, Polynomial::zero(xspace));
        for (int i = 0; i < l; ++i)
            m[i * l + i] = Polynomial::constant(xspace, Rat(1));
        return m;
    };
    auto matmul = [&](const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
        std::vector<Polynomial> c(l * l, Polynomial::zero(xspace));
        for (int i = 0; i < l; ++i)
            for (int k = 0; k < l; ++k)
                for (int j = 0; j < l; ++j)
                    c[i * l + j] = c[i * l + j] + a[i * l + k] * b[k * l + j];
        return c;
    };
    switch (r.kind) {
        case Rhs::Kind::Cat: {
            auto m = identity();
            for (const Rhs& a : r.args) m = matmul(m, matrix_rhs(M, interp, a, xspace, dim));
            return m;
        }
        case Rhs::Kind::Out: {
            std::vector<Polynomial> m;
            for (const Rat& x : interp.letter[r.num]) m.push_back(Polynomial::constant(xspace, x));
            return m;
        }
        case Rhs::Kind::Call: {
            std::vector<Polynomial> m;
            int base = (static_cast<int>(r.num) - 1) * dim + r.state * l * l;
            for (int i = 0; i < l * l; ++i) m.push_back(Polynomial::variable(xspace, base + i));
            return m;
        }
        default:
            throw std::invalid_argument("unsupported construct under matrix semantics");
    }
}

}  // namespace

PolySystem make_matrix_poly_system(const Transducer& M, const MatrixInterp& interp) {
    if (M.mode() != OutputMode::String || M.param_count() != 0)
        throw std::invalid_argument("matrix poly system needs a parameterless string transducer");
    if (!classify(M).total)
        throw std::invalid_argument("matrix poly system needs a total transducer");
    if (static_cast<int>(interp.letter.size()) != M.output_size() + 1)
        throw std::invalid_argument("matrix interpretation must cover every letter");
    PolySystem sys;
    sys.alpha = M.input_ptr();
    build_spaces(sys, coordinate_suffixes_matrix(M, interp.msize));
    int ll = interp.msize * interp.msize;
    for (SymbolId f = 0; f < M.input().size(); ++f) {
        int m = M.input().rank(f);
        const SpacePtr& xspace = sys.xspaces[m];
        std::vector<Polynomial> coords;
        coords.reserve(sys.dim);
        for (State q = 0; q < M.state_count(); ++q) {
            auto mat = matrix_rhs(M, interp, *M.rule(q, f), xspace, sys.dim);
            for (int i = 0; i < ll; ++i) coords.push_back(std::move(mat[i]));
        }
        sys.sem.emplace(f, std::move(coords));
    }
    return sys;
}

std::vector<std::vector<Polynomial>> matrix_symbol_semantics(const Transducer& M,
                                                             const MatrixInterp& interp,
                                                             SymbolId f) {
    PolySystem sys = make_matrix_poly_system(M, interp);
    int ll = interp.msize * interp.msize;
    std::vector<std::vector<Polynomial>> rows(M.state_count());
    const auto& coords = sys.sem.at(f);
    for (State q = 0; q < M.state_count(); ++q)
        for (int i = 0; i < ll; ++i) rows[q].push_back(coords[q * ll + i]);
    return rows;
}

Polynomial wp(const Polynomial& r, SymbolId f, const PolySystem& sys) {
    auto it = sys.sem.find(f);
    if (it == sys.sem.end()) throw std::invalid_argument("symbol not in system alphabet");
    return substitute(r, it->second);
}

Polynomial wp_monadic(const Polynomial& r, SymbolId f, const PolySystem& sys) {
    if (sys.alpha->rank(f) != 1)
        throw std::invalid_argument("wp_monadic needs a unary symbol");
    Polynomial over_x = wp(r, f, sys);
    std::vector<int> var_map(sys.dim);
    for (int j = 0; j < sys.dim; ++j) var_map[j] = j;
    return rename_vars(over_x, sys.zspace, var_map, kGrlex);
}

}  // namespace treq
