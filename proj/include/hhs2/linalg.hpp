/**
 * @file linalg.hpp
 * @brief Exact sparse linear algebra: rank, kernel, solve and span membership.
 *
 * Matrices are immutable sparse row lists. Elimination is plain Gauss on
 * copies; the first nonzero column of a reduced row becomes its pivot, so
 * returned kernel bases and solutions are deterministic. All routines first
 * split the matrix into connected row/column blocks and eliminate each block
 * independently, which gives the same pivots as a global elimination.
 */
#pragma once

#include "field.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhs2 {

template <ExactField F>
using Vector = std::vector<typename F::Scalar>;

template <ExactField F>
struct SparseEntry {
    std::size_t index;
    typename F::Scalar value;
    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sorted by index, no stored zeros.
template <ExactField F>
using SparseVector = std::vector<SparseEntry<F>>;

template <ExactField F>
struct Triplet {
    std::size_t row;
    std::size_t col;
    typename F::Scalar value;
};

template <ExactField F>
class Matrix {
public:
    using Scalar = typename F::Scalar;
    using Row = SparseVector<F>;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows) {}

    /// Duplicate coordinates are summed; entries that cancel are dropped.
    static Matrix from_triplets(F field, std::size_t rows, std::size_t cols, std::vector<Triplet<F>> triplets) {
        std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        Matrix m(field, rows, cols);
        for (std::size_t k = 0; k < triplets.size();) {
            const auto& t = triplets[k];
            if (t.row >= rows || t.col >= cols) throw std::out_of_range("triplet outside matrix bounds");
            Scalar sum = field.zero();
            std::size_t l = k;
            for (; l < triplets.size() && triplets[l].row == t.row && triplets[l].col == t.col; ++l)
                sum = field.add(sum, triplets[l].value);
            if (!field.is_zero(sum)) m.data_[t.row].push_back({t.col, std::move(sum)});
            k = l;
        }
        return m;
    }

    static Matrix from_dense(F field, std::size_t cols, const std::vector<Vector<F>>& rows) {
        Matrix m(field, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("dimension mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                if (!field.is_zero(rows[i][j])) m.data_[i].push_back({j, rows[i][j]});
        }
        return m;
    }

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, field.one()});
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Row& row(std::size_t i) const { return data_.at(i); }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    Scalar at(std::size_t i, std::size_t j) const {
        const auto& r = data_.at(i);
        auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.index < c; });
        return (it != r.end() && it->index == j) ? it->value : field_.zero();
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& e : data_[i]) t.data_[e.index].push_back({i, e.value});
        return t;
    }

    Vector<F> apply(const Vector<F>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("dimension mismatch");
        Vector<F> y(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& e : data_[i]) y[i] = field_.add(y[i], field_.mul(e.value, x[e.index]));
        return y;
    }

    Vector<F> column(std::size_t j) const {
        Vector<F> c(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require_same_field(a.field_, b.field_);
        if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
        const F& f = a.field_;
        Matrix c(f, a.rows_, b.cols_);
        Vector<F> acc(b.cols_, f.zero());
        std::vector<char> touched(b.cols_, 0);
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < a.rows_; ++i) {
            support.clear();
            for (const auto& ea : a.data_[i])
                for (const auto& eb : b.data_[ea.index]) {
                    if (!touched[eb.index]) {
                        touched[eb.index] = 1;
                        support.push_back(eb.index);
                    }
                    acc[eb.index] = f.add(acc[eb.index], f.mul(ea.value, eb.value));
                }
            std::sort(support.begin(), support.end());
            for (auto j : support) {
                if (!f.is_zero(acc[j])) c.data_[i].push_back({j, acc[j]});
                acc[j] = f.zero();
                touched[j] = 0;
            }
        }
        return c;
    }

    /// Side-by-side concatenation [a | b].
    static Matrix hstack(const Matrix& a, const Matrix& b) {
        require_same_field(a.field_, b.field_);
        if (a.rows_ != b.rows_) throw std::invalid_argument("dimension mismatch");
        Matrix m(a.field_, a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            m.data_[i] = a.data_[i];
            for (const auto& e : b.data_[i]) m.data_[i].push_back({e.index + a.cols_, e.value});
        }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.rows_; ++i) {
            const auto& x = a.data_[i];
            const auto& y = b.data_[i];
            if (x.size() != y.size()) return false;
            for (std::size_t k = 0; k < x.size(); ++k)
                if (x[k].index != y[k].index || !(x[k].value == y[k].value)) return false;
        }
        return true;
    }

private:
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Row> data_;
};

/**
 * Incremental echelon form of a growing set of vectors of fixed length.
 *
 * Each stored row has a distinct leading index with coefficient one and no
 * entries before it. With tracking enabled, every stored row also carries
 * its expression in terms of the inserted vectors, which is what `express`
 * uses to write a member of the span as a combination of the inputs.
 */
template <ExactField F>
class Echelon {
public:
    using Scalar = typename F::Scalar;

    Echelon(F field, std::size_t length, bool track = false)
        : field_(std::move(field)), length_(length), track_(track), pivot_at_(length, -1) {}

    std::size_t length() const { return length_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }

    /// Returns true iff v was independent of the current span.
    bool insert(const Vector<F>& v) {
        check_length(v.size());
        Vector<F> acc = v;
        return insert_reduced(acc);
    }

    bool insert(const SparseVector<F>& v) {
        Vector<F> acc(length_, field_.zero());
        for (const auto& e : v) {
            if (e.index >= length_) throw std::invalid_argument("dimension mismatch");
            acc[e.index] = e.value;
        }
        return insert_reduced(acc);
    }

    bool contains(const Vector<F>& v) const {
        check_length(v.size());
        Vector<F> acc = v;
        reduce(acc, nullptr);
        return std::all_of(acc.begin(), acc.end(), [&](const Scalar& s) { return field_.is_zero(s); });
    }

    /// Coefficients c (one per insert call) with v = sum c_k * input_k, or nothing if v is outside the span.
    std::optional<Vector<F>> express(const Vector<F>& v) const {
        if (!track_) throw std::logic_error("Echelon::express requires tracking");
        check_length(v.size());
        Vector<F> acc = v;
        Vector<F> combo(inserted_, field_.zero());
        reduce(acc, &combo);
        if (!std::all_of(acc.begin(), acc.end(), [&](const Scalar& s) { return field_.is_zero(s); }))
            return std::nullopt;
        // acc_final = v - sum combo_k * input_k = 0
        return combo;
    }

    /// Leading index of every stored row, in insertion order.
    const std::vector<std::size_t>& leads() const { return leads_; }
    const SparseVector<F>& row(std::size_t k) const { return rows_.at(k); }
    std::int64_t pivot_at(std::size_t index) const { return pivot_at_.at(index); }

private:
    void check_length(std::size_t n) const {
        if (n != length_) throw std::invalid_argument("dimension mismatch");
    }

    // Subtracts stored rows from acc until no leading index of acc has a pivot.
    // combo collects the multiples of inputs that were subtracted.
    void reduce(Vector<F>& acc, Vector<F>* combo) const {
        for (std::size_t idx = 0; idx < length_; ++idx) {
            if (field_.is_zero(acc[idx])) continue;
            auto p = pivot_at_[idx];
            if (p < 0) continue;
            Scalar c = acc[idx];
            for (const auto& e : rows_[p]) acc[e.index] = field_.sub(acc[e.index], field_.mul(c, e.value));
            if (combo)
                for (const auto& e : combos_[p]) (*combo)[e.index] = field_.add((*combo)[e.index], field_.mul(c, e.value));
        }
    }

    bool insert_reduced(Vector<F>& acc) {
        std::size_t id = inserted_++;
        Vector<F> combo;
        if (track_) combo.assign(inserted_, field_.zero());
        reduce(acc, track_ ? &combo : nullptr);
        std::size_t lead = 0;
        while (lead < length_ && field_.is_zero(acc[lead])) ++lead;
        if (lead == length_) return false;

        Scalar scale = field_.inv(acc[lead]);
        SparseVector<F> row;
        for (std::size_t j = lead; j < length_; ++j)
            if (!field_.is_zero(acc[j])) row.push_back({j, field_.mul(scale, acc[j])});
        pivot_at_[lead] = static_cast<std::int64_t>(rows_.size());
        rows_.push_back(std::move(row));
        leads_.push_back(lead);
        if (track_) {
            // new row = scale * (input_id - sum combo_k input_k)
            SparseVector<F> expr;
            for (std::size_t k = 0; k < id; ++k)
                if (!field_.is_zero(combo[k])) expr.push_back({k, field_.neg(field_.mul(scale, combo[k]))});
            expr.push_back({id, scale});
            combos_.push_back(std::move(expr));
        }
        return true;
    }

    F field_;
    std::size_t length_;
    bool track_;
    std::size_t inserted_ = 0;
    std::vector<std::int64_t> pivot_at_;
    std::vector<SparseVector<F>> rows_;
    std::vector<std::size_t> leads_;
    std::vector<SparseVector<F>> combos_;
};

namespace detail {

/// Connected components of the bipartite row/column incidence graph.
struct Block {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

template <ExactField F>
std::vector<Block> blocks_of(const Matrix<F>& m) {
    std::vector<std::size_t> parent(m.cols());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto& r = m.row(i);
        for (std::size_t k = 1; k < r.size(); ++k) {
            auto a = find(r[0].index), b = find(r[k].index);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<std::int64_t> block_of_root(m.cols(), -1);
    std::vector<Block> blocks;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto r = find(j);
        if (block_of_root[r] < 0) {
            block_of_root[r] = static_cast<std::int64_t>(blocks.size());
            blocks.emplace_back();
        }
        blocks[block_of_root[r]].cols.push_back(j);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto& r = m.row(i);
        if (!r.empty()) blocks[block_of_root[find(r[0].index)]].rows.push_back(i);
    }
    return blocks;
}

/// Local column index of every global column within its block.
inline std::vector<std::size_t> local_positions(const std::vector<Block>& blocks, std::size_t cols) {
    std::vector<std::size_t> local(cols, 0);
    for (const auto& b : blocks)
        for (std::size_t k = 0; k < b.cols.size(); ++k) local[b.cols[k]] = k;
    return local;
}

/// Row-echelon form of one block, optionally augmented by a right-hand side in the last column.
template <ExactField F>
Echelon<F> eliminate_block(const Matrix<F>& m, const Block& block, const std::vector<std::size_t>& local,
                           const Vector<F>* rhs) {
    const F& f = m.field();
    std::size_t width = block.cols.size() + (rhs ? 1 : 0);
    Echelon<F> ech(f, width);
    for (auto i : block.rows) {
        SparseVector<F> v;
        for (const auto& e : m.row(i)) v.push_back({local[e.index], e.value});
        if (rhs && !f.is_zero((*rhs)[i])) v.push_back({block.cols.size(), (*rhs)[i]});
        ech.insert(v);
    }
    return ech;
}

/// Fills x (local coordinates of one block) by back substitution; free variables keep their values.
template <ExactField F>
void back_substitute(const F& f, const Echelon<F>& ech, std::size_t rhs_index, Vector<F>& x) {
    std::vector<std::size_t> order(ech.rank());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ech.leads()[a] > ech.leads()[b]; });
    for (auto k : order) {
        auto lead = ech.leads()[k];
        typename F::Scalar value = f.zero();
        for (const auto& e : ech.row(k)) {
            if (e.index == lead) continue;
            if (e.index == rhs_index)
                value = f.add(value, e.value);
            else
                value = f.sub(value, f.mul(e.value, x[e.index]));
        }
        x[lead] = value;
    }
}

}  // namespace detail

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
    auto blocks = detail::blocks_of(m);
    auto local = detail::local_positions(blocks, m.cols());
    std::size_t r = 0;
    for (const auto& b : blocks)
        if (!b.rows.empty()) r += detail::eliminate_block(m, b, local, nullptr).rank();
    return r;
}

/// Basis of {v : Mv = 0}, one vector per non-pivot column, ordered by that column.
template <ExactField F>
std::vector<Vector<F>> kernel_basis(const Matrix<F>& m) {
    const F& f = m.field();
    auto blocks = detail::blocks_of(m);
    auto local = detail::local_positions(blocks, m.cols());
    std::vector<std::pair<std::size_t, Vector<F>>> found;
    for (const auto& b : blocks) {
        auto ech = detail::eliminate_block(m, b, local, nullptr);
        std::vector<char> is_lead(b.cols.size(), 0);
        for (auto l : ech.leads()) is_lead[l] = 1;
        for (std::size_t free = 0; free < b.cols.size(); ++free) {
            if (is_lead[free]) continue;
            Vector<F> x(b.cols.size(), f.zero());
            x[free] = f.one();
            detail::back_substitute(f, ech, b.cols.size(), x);
            Vector<F> full(m.cols(), f.zero());
            for (std::size_t k = 0; k < b.cols.size(); ++k) full[b.cols[k]] = x[k];
            found.emplace_back(b.cols[free], std::move(full));
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Vector<F>> basis;
    basis.reserve(found.size());
    for (auto& [col, v] : found) basis.push_back(std::move(v));
    return basis;
}

/// Some x with Mx = b (free variables set to zero), or nothing when b is outside the column space.
template <ExactField F>
std::optional<Vector<F>> solve(const Matrix<F>& m, const Vector<F>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("dimension mismatch");
    const F& f = m.field();
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m.row(i).empty() && !f.is_zero(b[i])) return std::nullopt;

    auto blocks = detail::blocks_of(m);
    auto local = detail::local_positions(blocks, m.cols());
    Vector<F> x(m.cols(), f.zero());
    for (const auto& blk : blocks) {
        if (blk.rows.empty()) continue;
        auto ech = detail::eliminate_block(m, blk, local, &b);
        std::size_t rhs = blk.cols.size();
        for (auto l : ech.leads())
            if (l == rhs) return std::nullopt;
        Vector<F> xl(rhs, f.zero());
        detail::back_substitute(f, ech, rhs, xl);
        for (std::size_t k = 0; k < rhs; ++k) x[blk.cols[k]] = xl[k];
    }
    if (m.apply(x) != b) throw std::logic_error("solve: re-multiplication check failed");
    return x;
}

template <ExactField F>
bool in_span(const F& field, const std::vector<Vector<F>>& basis, const Vector<F>& v) {
    Echelon<F> ech(field, v.size());
    for (const auto& u : basis) ech.insert(u);
    return ech.contains(v);
}

/**
 * Column space of a fixed matrix, prepared once for many membership queries.
 * Columns are eliminated block by block so fill-in stays inside a block.
 */
template <ExactField F>
class ColumnSpace {
public:
    explicit ColumnSpace(const Matrix<F>& m) : field_(m.field()), rows_(m.rows()), block_of_row_(m.rows(), -1),
                                                local_row_(m.rows(), 0) {
        auto t = m.transpose();
        auto blocks = detail::blocks_of(t);
        for (const auto& b : blocks) {
            if (b.rows.empty()) continue;
            auto id = static_cast<std::int64_t>(spaces_.size());
            for (std::size_t k = 0; k < b.cols.size(); ++k) {
                block_of_row_[b.cols[k]] = id;
                local_row_[b.cols[k]] = k;
            }
            Echelon<F> ech(field_, b.cols.size());
            for (auto col : b.rows) {
                SparseVector<F> v;
                for (const auto& e : t.row(col)) v.push_back({local_row_[e.index], e.value});
                ech.insert(v);
            }
            rank_ += ech.rank();
            spaces_.push_back(std::move(ech));
        }
    }

    std::size_t rank() const { return rank_; }

    bool contains(const Vector<F>& b) const {
        if (b.size() != rows_) throw std::invalid_argument("dimension mismatch");
        std::vector<Vector<F>> parts(spaces_.size());
        for (std::size_t i = 0; i < rows_; ++i) {
            if (field_.is_zero(b[i])) continue;
            auto blk = block_of_row_[i];
            if (blk < 0) return false;
            auto& part = parts[blk];
            if (part.empty()) part.assign(spaces_[blk].length(), field_.zero());
            part[local_row_[i]] = b[i];
        }
        for (std::size_t k = 0; k < parts.size(); ++k)
            if (!parts[k].empty() && !spaces_[k].contains(parts[k])) return false;
        return true;
    }

private:
    F field_;
    std::size_t rows_;
    std::size_t rank_ = 0;
    std::vector<std::int64_t> block_of_row_;
    std::vector<std::size_t> local_row_;
    std::vector<Echelon<F>> spaces_;
};

}  // namespace hhs2
