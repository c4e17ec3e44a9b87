#ifndef TREQ_SEMANTICS_HPP_
#define TREQ_SEMANTICS_HPP_

#include <functional>
#include <stdexcept>
#include <vector>

#include "treq/rational.hpp"
#include "treq/transducer.hpp"

namespace treq {

template <class F>
using Vec = std::vector<typename F::Elem>;

/// Semantics vectors of a total numeric transducer: the value of a tree is
/// the n×(l+1) coefficient matrix of the per-state affine functions of the
/// parameters, flattened row-major (coordinate q*(l+1)+k holds the
/// coefficient of y_k in state q, with k = 0 the constant part).
template <class F>
class TransducerSemantics {
public:
    TransducerSemantics(const Transducer& M, F field) : M_(&M), field_(std::move(field)) {
        if (M.mode() != OutputMode::Numeric)
            throw std::invalid_argument("vector semantics needs a numeric transducer");
    }

    int dim() const { return M_->state_count() * (M_->param_count() + 1); }
    const RankedAlphabet& alphabet() const { return M_->input(); }
    const F& field() const { return field_; }
    int coord(State q, int k) const { return q * (M_->param_count() + 1) + k; }

    /// One application of the per-symbol transformation to child values.
    Vec<F> apply(SymbolId f, const std::vector<Vec<F>>& args) const {
        int l = M_->param_count();
        Vec<F> out(dim(), field_.zero());
        for (State q = 0; q < M_->state_count(); ++q) {
            const Rhs* r = M_->rule(q, f);
            if (!r)
                throw std::invalid_argument("apply on partial transducer (state " +
                                            M_->state_name(q) + ")");
            Vec<F> row = eval_rhs(*r, args);
            for (int k = 0; k <= l; ++k) out[coord(q, k)] = row[k];
        }
        return out;
    }

    Vec<F> eval_tree(const Tree& t) const {
        std::vector<Vec<F>> kids;
        kids.reserve(t.kids.size());
        for (const Tree& k : t.kids) kids.push_back(eval_tree(k));
        return apply(t.sym, kids);
    }

private:
    // Value of a rhs as an affine function of the parameters: l+1 field
    // coefficients.
    Vec<F> eval_rhs(const Rhs& r, const std::vector<Vec<F>>& args) const {
        int l = M_->param_count();
        Vec<F> v(l + 1, field_.zero());
        switch (r.kind) {
            case Rhs::Kind::Const:
                v[0] = field_.from_int(static_cast<long>(r.num));
                return v;
            case Rhs::Kind::Param:
                v[r.num] = field_.one();
                return v;
            case Rhs::Kind::Add:
                for (const Rhs& a : r.args) {
                    Vec<F> t = eval_rhs(a, args);
                    for (int k = 0; k <= l; ++k) v[k] = field_.add(v[k], t[k]);
                }
                return v;
            case Rhs::Kind::Mul: {
                Vec<F> t = eval_rhs(r.args[0], args);
                auto c = field_.from_int(static_cast<long>(r.num));
                for (int k = 0; k <= l; ++k) v[k] = field_.mul(c, t[k]);
                return v;
            }
            case Rhs::Kind::Call: {
                const Vec<F>& child = args[r.num - 1];
                std::vector<Vec<F>> ps;
                ps.reserve(r.args.size());
                for (const Rhs& a : r.args) ps.push_back(eval_rhs(a, args));
                // child row q' is an affine function; compose with the
                // evaluated parameter expressions
                State q2 = r.state;
                int base = q2 * (l + 1);
                v[0] = child[base];
                for (int k = 1; k <= l; ++k) {
                    const auto& coeff = child[base + k];
                    for (int j = 0; j <= l; ++j)
                        v[j] = field_.add(v[j], field_.mul(coeff, ps[k - 1][j]));
                }
                return v;
            }
            default:
                throw std::invalid_argument("string construct in numeric rule");
        }
    }

    const Transducer* M_;
    F field_;
};

/// Rational square matrices interpreting output letters; used for output in
/// matrix monoids and, with the Sanov generators, the free group F2.
struct MatrixInterp {
    int msize = 2;                         // l
    std::vector<std::vector<Rat>> letter;  // per 1-based letter id, flattened l×l row-major
};

/// Semantics of a total parameterless string transducer under a matrix
/// interpretation of the letters: the value of a tree is one l×l matrix per
/// state, flattened to n*l*l coordinates.
template <class F>
class MatrixSemantics {
public:
    MatrixSemantics(const Transducer& M, const MatrixInterp& interp, F field)
        : M_(&M), field_(std::move(field)), msize_(interp.msize) {
        if (M.mode() != OutputMode::String || M.param_count() != 0)
            throw std::invalid_argument(
                "matrix semantics needs a parameterless string transducer");
        if (static_cast<int>(interp.letter.size()) != M.output_size() + 1)
            throw std::invalid_argument("matrix interpretation must cover every letter");
        for (int id = 1; id <= M.output_size(); ++id) {
            if (static_cast<int>(interp.letter[id].size()) != msize_ * msize_)
                throw std::invalid_argument("matrix interpretation has wrong dimension");
            letters_.emplace_back();
            for (const Rat& x : interp.letter[id]) letters_.back().push_back(field_.from_rat(x));
        }
    }

    int dim() const { return M_->state_count() * msize_ * msize_; }
    int msize() const { return msize_; }
    const RankedAlphabet& alphabet() const { return M_->input(); }
    const F& field() const { return field_; }
    int coord(State q, int lam, int mu) const { return (q * msize_ + lam) * msize_ + mu; }

    Vec<F> apply(SymbolId f, const std::vector<Vec<F>>& args) const {
        Vec<F> out(dim(), field_.zero());
        for (State q = 0; q < M_->state_count(); ++q) {
            const Rhs* r = M_->rule(q, f);
            if (!r)
                throw std::invalid_argument("apply on partial transducer (state " +
                                            M_->state_name(q) + ")");
            Vec<F> mat = eval_rhs(*r, args);
            for (int i = 0; i < msize_ * msize_; ++i) out[q * msize_ * msize_ + i] = mat[i];
        }
        return out;
    }

    Vec<F> eval_tree(const Tree& t) const {
        std::vector<Vec<F>> kids;
        kids.reserve(t.kids.size());
        for (const Tree& k : t.kids) kids.push_back(eval_tree(k));
        return apply(t.sym, kids);
    }

private:
    Vec<F> identity() const {
        Vec<F> m(msize_ * msize_, field_.zero());
        for (int i = 0; i < msize_; ++i) m[i * msize_ + i] = field_.one();
        return m;
    }
    Vec<F> matmul(const Vec<F>& a, const Vec<F>& b) const {
        Vec<F> c(msize_ * msize_, field_.zero());
        for (int i = 0; i < msize_; ++i)
            for (int k = 0; k < msize_; ++k)
                for (int j = 0; j < msize_; ++j)
                    c[i * msize_ + j] = field_.add(
                        c[i * msize_ + j],
                        field_.mul(a[i * msize_ + k], b[k * msize_ + j]));
        return c;
    }

    Vec<F> eval_rhs(const Rhs& r, const std::vector<Vec<F>>& args) const {
        switch (r.kind) {
            case Rhs::Kind::Cat: {
                Vec<F> m = identity();
                for (const Rhs& a : r.args) m = matmul(m, eval_rhs(a, args));
                return m;
            }
            case Rhs::Kind::Out:
                return letters_[r.num - 1];
            case Rhs::Kind::Call: {
                const Vec<F>& child = args[r.num - 1];
                Vec<F> m(msize_ * msize_);
                int base = r.state * msize_ * msize_;
                for (int i = 0; i < msize_ * msize_; ++i) m[i] = child[base + i];
                return m;
            }
            default:
                throw std::invalid_argument("unsupported construct under matrix semantics");
        }
    }

    const Transducer* M_;
    F field_;
    int msize_;
    std::vector<Vec<F>> letters_;
};

}  // namespace treq

#endif
