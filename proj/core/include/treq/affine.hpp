#ifndef TREQ_AFFINE_HPP_
#define TREQ_AFFINE_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "treq/semantics.hpp"
#include "treq/tree.hpp"

namespace treq {

/// aff(V) for a growing set V, kept as one base point plus a basis of the
/// difference space L in reduced echelon form (unit pivots, zeros above and
/// below). Inserted vectors are retained verbatim together with the input
/// tree that produced them, so equivalence violations map back to witnesses.
template <class F>
class AffineBasis {
public:
    AffineBasis() = default;
    AffineBasis(F field, int dim) : field_(std::move(field)), dim_(dim) {}

    int dim() const { return dim_; }
    bool empty() const { return !has_base_; }
    int linear_dim() const { return static_cast<int>(rows_.size()); }
    /// Points inserted so far (an affine generating set of the closure).
    const std::vector<std::pair<Vec<F>, Tree>>& elements() const { return elements_; }

    bool contains(const Vec<F>& v) const {
        check_dim(v);
        if (!has_base_) return false;
        Vec<F> d = diff(v, base_);
        reduce(d);
        return first_nonzero(d) < 0;
    }

    /// Returns false (unchanged) when v is already in the affine hull.
    bool insert(const Vec<F>& v, Tree witness) {
        check_dim(v);
        if (!has_base_) {
            base_ = v;
            has_base_ = true;
            elements_.emplace_back(v, std::move(witness));
            return true;
        }
        Vec<F> d = diff(v, base_);
        reduce(d);
        int pivot = first_nonzero(d);
        if (pivot < 0) return false;
        normalize(d, pivot);
        // keep reduced form: clear the new pivot column in existing rows
        for (Row& row : rows_) {
            const auto& c = row.v[pivot];
            if (!field_.is_zero(c)) axpy(row.v, field_.neg(c), d);
        }
        rows_.push_back({pivot, std::move(d)});
        std::sort(rows_.begin(), rows_.end(),
                  [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
        elements_.emplace_back(v, std::move(witness));
        return true;
    }

private:
    struct Row {
        int pivot;
        Vec<F> v;
    };

    void check_dim(const Vec<F>& v) const {
        if (static_cast<int>(v.size()) != dim_)
            throw std::invalid_argument("affine basis dimension mismatch");
    }
    Vec<F> diff(const Vec<F>& a, const Vec<F>& b) const {
        Vec<F> d(dim_);
        for (int i = 0; i < dim_; ++i) d[i] = field_.sub(a[i], b[i]);
        return d;
    }
    // v += c * w
    void axpy(Vec<F>& v, const typename F::Elem& c, const Vec<F>& w) const {
        for (int i = 0; i < dim_; ++i) v[i] = field_.add(v[i], field_.mul(c, w[i]));
    }
    void reduce(Vec<F>& d) const {
        for (const Row& row : rows_) {
            const auto& c = d[row.pivot];
            if (!field_.is_zero(c)) axpy(d, field_.neg(c), row.v);
        }
    }
    int first_nonzero(const Vec<F>& d) const {
        for (int i = 0; i < dim_; ++i)
            if (!field_.is_zero(d[i])) return i;
        return -1;
    }
    void normalize(Vec<F>& d, int pivot) const {
        auto inv = field_.div(field_.one(), d[pivot]);
        for (int i = 0; i < dim_; ++i) d[i] = field_.mul(d[i], inv);
    }

    F field_;
    int dim_ = 0;
    bool has_base_ = false;
    Vec<F> base_;
    std::vector<Row> rows_;
    std::vector<std::pair<Vec<F>, Tree>> elements_;
};

}  // namespace treq

#endif
