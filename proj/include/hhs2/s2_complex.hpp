/**
 * @file s2_complex.hpp
 * @brief The 2-sphere cochain complex in tensor-matrix form.
 *
 * A basis tensor of C^n is laid out as an upper-triangular n x n matrix with
 * ones on the diagonal; entry (i, j), 1 <= i < j <= n, is one tensor factor
 * and the factors are ordered row-major. Under this layout the simplex
 * ^a Delta^b_c of level n sits at position (a+1, a+b+2).
 *
 * The operations here are combinatorial: rectangle and triangle sub-tensors,
 * the row/column collapses H and V, and CollapsePlan, which records where
 * each entry of a big triangle ends up when rows and columns are merged or
 * dropped. The differential and the operad compositions are both plans.
 */
#pragma once

#include "cochain.hpp"
#include "simplicial.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace hhs2 {

struct TriPosition {
    std::size_t i;
    std::size_t j;
    friend bool operator==(const TriPosition&, const TriPosition&) = default;
};

inline std::size_t tri_size(std::size_t n) { return s2_inputs(n); }

/// Row-major index of (i, j) among the strictly upper positions of an n x n triangle.
inline std::size_t tri_index(std::size_t i, std::size_t j, std::size_t n) {
    if (!(1 <= i && i < j && j <= n)) throw std::out_of_range("position outside the triangle");
    return (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}

inline TriPosition tri_position(std::size_t index, std::size_t n) {
    if (index >= tri_size(n)) throw std::out_of_range("position index outside the triangle");
    std::size_t i = 1;
    while (index >= n - i) {
        index -= n - i;
        ++i;
    }
    return {i, i + 1 + index};
}

/// ^a Delta^b_c  ->  (a+1, a+b+2) in the triangle of size a+b+c+2.
inline TriPosition pos_of_simplex(const S2Simplex& s) { return {s.a + 1, s.a + s.b + 2}; }

inline S2Simplex simplex_of_pos(std::size_t i, std::size_t j, std::size_t n) {
    if (!(1 <= i && i < j && j <= n)) throw std::out_of_range("position outside the triangle");
    std::size_t a = i - 1, b = j - i - 1;
    return {a, b, n - 2 - a - b};
}

/// Rectangle R_{row,col}^{rows,cols}: entries (row..row+rows-1, col..col+cols-1).
struct RectSpec {
    std::size_t row;
    std::size_t col;
    std::size_t rows;
    std::size_t cols;
};

/// Triangle T_start^size: the diagonal block on indices start..start+size-1.
struct TriSpec {
    std::size_t start;
    std::size_t size;
};

inline void check_inside(const RectSpec& r, std::size_t n) {
    if (r.rows == 0 || r.cols == 0) return;
    if (r.row < 1 || r.row + r.rows - 1 >= r.col || r.col + r.cols - 1 > n)
        throw std::out_of_range("rectangle is not inside the strict upper triangle");
}

/// Linear positions of a rectangle, row-major.
inline std::vector<std::size_t> positions(const RectSpec& r, std::size_t n) {
    check_inside(r, n);
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < r.rows; ++p)
        for (std::size_t q = 0; q < r.cols; ++q) out.push_back(tri_index(r.row + p, r.col + q, n));
    return out;
}

/// Linear positions of a triangle, in the triangle's own row-major order.
inline std::vector<std::size_t> positions(const TriSpec& t, std::size_t n) {
    if (t.size > 0 && (t.start < 1 || t.start + t.size - 1 > n))
        throw std::out_of_range("triangle is not inside the ambient triangle");
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < t.size; ++p)
        for (std::size_t q = p + 1; q < t.size; ++q) out.push_back(tri_index(t.start + p, t.start + q, n));
    return out;
}

/// H: one group per rectangle row; the group's entries are multiplied into a single column entry.
inline std::vector<std::vector<std::size_t>> h_collapse(const RectSpec& r, std::size_t n) {
    check_inside(r, n);
    std::vector<std::vector<std::size_t>> groups(r.rows);
    for (std::size_t p = 0; p < r.rows; ++p)
        for (std::size_t q = 0; q < r.cols; ++q) groups[p].push_back(tri_index(r.row + p, r.col + q, n));
    return groups;
}

/// V: one group per rectangle column; the group's entries are multiplied into a single row entry.
inline std::vector<std::vector<std::size_t>> v_collapse(const RectSpec& r, std::size_t n) {
    check_inside(r, n);
    std::vector<std::vector<std::size_t>> groups(r.cols);
    for (std::size_t q = 0; q < r.cols; ++q)
        for (std::size_t p = 0; p < r.rows; ++p) groups[q].push_back(tri_index(r.row + p, r.col + q, n));
    return groups;
}

/**
 * Where every entry of a source triangle goes.
 *
 * Each source position is sent to a target position (entries sent to the
 * same target are multiplied), into the scalar coefficient in front of the
 * outer map, or into an inner triangle that feeds a second map. Every source
 * position has exactly one destination.
 */
class CollapsePlan {
public:
    enum class Kind { target, coefficient, inner };
    struct Dest {
        Kind kind = Kind::coefficient;
        std::size_t index = 0;
    };

    CollapsePlan(std::size_t source_n, std::size_t target_n, std::size_t inner_n)
        : source_n_(source_n), target_n_(target_n), inner_n_(inner_n), dest_(tri_size(source_n)),
          assigned_(tri_size(source_n), 0) {}

    /**
     * Plan induced by a map on row/column indices: map[k-1] is the image of
     * index k in 1..target_n, or 0 when index k is dropped. Entry (k, l)
     * goes to (map k, map l) when both images exist and differ, and to the
     * coefficient otherwise.
     */
    static CollapsePlan from_index_map(std::size_t source_n, std::size_t target_n,
                                       const std::vector<std::size_t>& map) {
        if (map.size() != source_n) throw std::invalid_argument("index map has wrong length");
        CollapsePlan plan(source_n, target_n, 0);
        for (std::size_t k = 1; k <= source_n; ++k)
            for (std::size_t l = k + 1; l <= source_n; ++l) {
                auto mk = map[k - 1], ml = map[l - 1];
                auto src = tri_index(k, l, source_n);
                if (mk == 0 || ml == 0 || mk == ml)
                    plan.assign(src, {Kind::coefficient, 0});
                else {
                    if (mk > ml) throw std::invalid_argument("index map must be monotone");
                    plan.assign(src, {Kind::target, tri_index(mk, ml, target_n)});
                }
            }
        plan.check_complete();
        return plan;
    }

    /// Drop index k: rows/columns k vanish and their entries become the coefficient.
    static CollapsePlan drop(std::size_t source_n, std::size_t k) {
        std::vector<std::size_t> map(source_n);
        for (std::size_t x = 1; x <= source_n; ++x) map[x - 1] = x < k ? x : (x == k ? 0 : x - 1);
        return from_index_map(source_n, source_n - 1, map);
    }

    /// Merge indices i and i+1: entry (i, i+1) becomes the coefficient, the rest multiply pairwise.
    static CollapsePlan merge(std::size_t source_n, std::size_t i) {
        std::vector<std::size_t> map(source_n);
        for (std::size_t x = 1; x <= source_n; ++x) map[x - 1] = x <= i ? x : x - 1;
        return from_index_map(source_n, source_n - 1, map);
    }

    /**
     * The plan of f o_i g for f of arity n and g of arity m: the block
     * T_i^m feeds g, H(R_{1,i}^{i-1,m}) becomes column i of f's triangle,
     * V(R_{i,i+m}^{m,n-i}) becomes row i, and everything else is relabelled.
     */
    static CollapsePlan insertion(std::size_t n, std::size_t m, std::size_t i) {
        if (i < 1 || i > n || m < 1) throw std::out_of_range("insertion slot out of range");
        const std::size_t big = n + m - 1;
        CollapsePlan plan(big, n, m);
        for (auto src : positions(TriSpec{i, m}, big)) {
            auto [p, q] = tri_position(src, big);
            plan.assign(src, {Kind::inner, tri_index(p - i + 1, q - i + 1, m)});
        }
        auto column = h_collapse(RectSpec{1, i, i - 1, m}, big);
        for (std::size_t r = 0; r < column.size(); ++r)
            for (auto src : column[r]) plan.assign(src, {Kind::target, tri_index(r + 1, i, n)});
        auto row = v_collapse(RectSpec{i, i + m, m, n - i}, big);
        for (std::size_t c = 0; c < row.size(); ++c)
            for (auto src : row[c]) plan.assign(src, {Kind::target, tri_index(i, i + 1 + c, n)});
        // Remaining blocks T_1^{i-1}, R_{1,i+m}^{i-1,n-i}, T_{i+m}^{n-i} keep their shape.
        auto relabel = [&](std::size_t x) { return x < i ? x : x - m + 1; };
        for (std::size_t src = 0; src < tri_size(big); ++src) {
            if (plan.assigned_[src]) continue;
            auto [p, q] = tri_position(src, big);
            plan.assign(src, {Kind::target, tri_index(relabel(p), relabel(q), n)});
        }
        plan.check_complete();
        return plan;
    }

    std::size_t source_n() const { return source_n_; }
    std::size_t target_n() const { return target_n_; }
    std::size_t inner_n() const { return inner_n_; }
    const std::vector<Dest>& destinations() const { return dest_; }

    /**
     * Applies the plan to one source basis tensor: fills the target entries
     * (products of basis elements), the coefficient, and the inner basis digits.
     */
    template <ExactField F>
    void apply(const Algebra<F>& alg, std::span<const std::size_t> digits, std::vector<SparseVector<F>>& target,
               SparseVector<F>& coefficient, std::vector<std::size_t>& inner) const {
        target.assign(tri_size(target_n_), alg.unit_sparse());
        inner.assign(tri_size(inner_n_), 0);
        coefficient = alg.unit_sparse();
        for (std::size_t src = 0; src < dest_.size(); ++src) {
            const auto& d = dest_[src];
            switch (d.kind) {
                case Kind::target:
                    target[d.index] = alg.mul_basis(target[d.index], digits[src]);
                    break;
                case Kind::coefficient:
                    coefficient = alg.mul_basis(coefficient, digits[src]);
                    break;
                case Kind::inner:
                    inner[d.index] = digits[src];
                    break;
            }
        }
    }

private:
    void assign(std::size_t src, Dest d) {
        if (assigned_.at(src)) throw std::logic_error("collapse plan assigns a position twice");
        assigned_[src] = 1;
        dest_[src] = d;
    }
    void check_complete() const {
        for (auto a : assigned_)
            if (!a) throw std::logic_error("collapse plan leaves a position unassigned");
    }

    std::size_t source_n_;
    std::size_t target_n_;
    std::size_t inner_n_;
    std::vector<Dest> dest_;
    std::vector<char> assigned_;
};

/// The n+2 signed plans of the differential C^n -> C^{n+1}.
inline std::vector<std::pair<int, CollapsePlan>> delta_plans(std::size_t n) {
    const std::size_t big = n + 1;
    std::vector<std::pair<int, CollapsePlan>> plans;
    plans.emplace_back(+1, CollapsePlan::drop(big, 1));
    for (std::size_t i = 1; i <= n; ++i) plans.emplace_back(i % 2 ? -1 : +1, CollapsePlan::merge(big, i));
    plans.emplace_back((n + 1) % 2 ? -1 : +1, CollapsePlan::drop(big, big));
    return plans;
}

/// delta(f) for f in C^n: the closed-form coboundary on the triangle of size n+1.
template <ExactField F>
Cochain<F> delta(const Cochain<F>& f, std::size_t cap = default_size_cap) {
    if (f.degree() < 0 || f.inputs() != s2_inputs(static_cast<std::size_t>(f.degree())))
        throw std::invalid_argument("delta expects a 2-sphere cochain");
    const std::size_t n = static_cast<std::size_t>(f.degree());
    const auto& alg = f.algebra();
    const F& field = alg.field();
    auto out = Cochain<F>::s2(f.algebra_ptr(), static_cast<int>(n + 1), cap);
    auto plans = delta_plans(n);

    TensorIndexer idx(alg.dim(), tri_size(n + 1));
    std::vector<std::size_t> digits(idx.inputs()), inner;
    std::vector<SparseVector<F>> entries;
    SparseVector<F> coefficient;
    for (std::size_t t = 0; t < idx.count(); ++t) {
        idx.decode(t, digits);
        auto total = alg.zero();
        for (const auto& [sign, plan] : plans) {
            plan.apply(alg, digits, entries, coefficient, inner);
            if (coefficient.empty()) continue;
            auto value = alg.mul(alg.to_dense(coefficient), f.evaluate(entries));
            for (std::size_t r = 0; r < value.size(); ++r)
                total[r] = sign > 0 ? field.add(total[r], value[r]) : field.sub(total[r], value[r]);
        }
        out.set(t, total);
    }
    return out;
}

/// Matrix of delta: C^n -> C^{n+1} in the flat pure-tensor bases.
template <ExactField F>
Matrix<F> delta_matrix(const Algebra<F>& alg, std::size_t n, std::size_t cap = default_size_cap) {
    const F& field = alg.field();
    const std::size_t d = alg.dim();
    const std::size_t rows = checked_power(d, tri_size(n + 1) + 1, cap);
    const std::size_t cols = checked_power(d, tri_size(n) + 1, cap);
    auto plans = delta_plans(n);

    std::vector<Triplet<F>> triplets;
    TensorIndexer idx(d, tri_size(n + 1));
    std::vector<std::size_t> digits(idx.inputs()), inner;
    std::vector<SparseVector<F>> entries;
    SparseVector<F> coefficient;
    std::vector<SparseVector<F>> coeff_times_basis(d);
    for (std::size_t t = 0; t < idx.count(); ++t) {
        idx.decode(t, digits);
        for (const auto& [sign, plan] : plans) {
            plan.apply(alg, digits, entries, coefficient, inner);
            if (coefficient.empty()) continue;
            for (std::size_t q = 0; q < d; ++q) coeff_times_basis[q] = alg.mul(coefficient, alg.to_sparse(alg.basis(q)));
            const auto s = sign_of(field, sign > 0 ? 0 : 1);
            expand_tensor(field, d, std::span<const SparseVector<F>>(entries),
                          [&](std::size_t src, const typename F::Scalar& w) {
                              auto sw = field.mul(s, w);
                              for (std::size_t q = 0; q < d; ++q)
                                  for (const auto& e : coeff_times_basis[q])
                                      triplets.push_back({t * d + e.index, src * d + q, field.mul(sw, e.value)});
                          });
        }
    }
    return Matrix<F>::from_triplets(field, rows, cols, std::move(triplets));
}

}  // namespace hhs2
