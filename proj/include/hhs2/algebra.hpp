/**
 * @file algebra.hpp
 * @brief Finite-dimensional commutative unital algebras given by structure constants.
 *
 * An Algebra is validated once, at construction: commutativity,
 * associativity and the unit law are checked on every basis tuple. Every
 * later module relies on these identities holding exactly.
 */
#pragma once

#include "field.hpp"
#include "linalg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhs2 {

class AlgebraError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <ExactField F>
class Algebra {
public:
    using Scalar = typename F::Scalar;
    using Element = Vector<F>;
    using Sparse = SparseVector<F>;
    using Table = std::vector<std::vector<Element>>;

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Element& unit() const { return unit_; }
    const Sparse& unit_sparse() const { return unit_sparse_; }
    const Table& table() const { return table_; }

    /// Weight of each basis vector when the basis is monomial (x^k has weight k).
    const std::optional<std::vector<int>>& monomial_weights() const { return weights_; }

    /// Coordinates of e_i * e_j, nonzero entries only.
    const Sparse& basis_product(std::size_t i, std::size_t j) const { return sparse_[i * dim_ + j]; }

    Element zero() const { return Element(dim_, field_.zero()); }
    Element basis(std::size_t i) const {
        Element e = zero();
        e.at(i) = field_.one();
        return e;
    }

    Element mul(const Element& x, const Element& y) const {
        if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("dimension mismatch");
        Element z = zero();
        for (std::size_t i = 0; i < dim_; ++i) {
            if (field_.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (field_.is_zero(y[j])) continue;
                Scalar c = field_.mul(x[i], y[j]);
                for (const auto& t : basis_product(i, j))
                    z[t.index] = field_.add(z[t.index], field_.mul(c, t.value));
            }
        }
        return z;
    }

    Sparse mul(const Sparse& x, const Sparse& y) const {
        Element z = zero();
        for (const auto& a : x)
            for (const auto& b : y) {
                Scalar c = field_.mul(a.value, b.value);
                for (const auto& t : basis_product(a.index, b.index))
                    z[t.index] = field_.add(z[t.index], field_.mul(c, t.value));
            }
        return to_sparse(z);
    }

    /// x * e_j, the step used when multiplying out a product of basis entries.
    Sparse mul_basis(const Sparse& x, std::size_t j) const {
        if (x.size() == 1 && x[0].value == field_.one()) return basis_product(x[0].index, j);
        Element z = zero();
        for (const auto& a : x)
            for (const auto& t : basis_product(a.index, j))
                z[t.index] = field_.add(z[t.index], field_.mul(a.value, t.value));
        return to_sparse(z);
    }

    Sparse to_sparse(const Element& x) const {
        Sparse s;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!field_.is_zero(x[i])) s.push_back({i, x[i]});
        return s;
    }

    Element to_dense(const Sparse& x) const {
        Element z = zero();
        for (const auto& t : x) z[t.index] = t.value;
        return z;
    }

    friend bool operator==(const Algebra& a, const Algebra& b) {
        return a.field_ == b.field_ && a.dim_ == b.dim_ && a.unit_ == b.unit_ && a.table_ == b.table_;
    }

    static Algebra create(F field, std::size_t dim, Element unit, Table table, std::vector<std::string> labels,
                          std::string name);

    void set_monomial_weights(std::vector<int> w) {
        if (w.size() != dim_) throw std::invalid_argument("dimension mismatch");
        weights_ = std::move(w);
    }

private:
    Algebra(F field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

    F field_;
    std::size_t dim_;
    std::string name_;
    std::vector<std::string> labels_;
    Element unit_;
    Sparse unit_sparse_;
    Table table_;
    std::vector<Sparse> sparse_;
    std::optional<std::vector<int>> weights_;
};

/// Builds an algebra and checks all structure identities; throws AlgebraError naming the first violation.
template <ExactField F>
Algebra<F> make_algebra(F field, std::size_t dim, Vector<F> unit, typename Algebra<F>::Table table,
                        std::vector<std::string> labels = {}, std::string name = "custom") {
    return Algebra<F>::create(std::move(field), dim, std::move(unit), std::move(table), std::move(labels),
                              std::move(name));
}

template <ExactField F>
Algebra<F> Algebra<F>::create(F field, std::size_t dim, Element unit, Table table, std::vector<std::string> labels,
                              std::string name) {
    if (dim == 0) throw AlgebraError("algebra dimension must be at least 1");
    if (unit.size() != dim) throw AlgebraError("unit has wrong length");
    if (table.size() != dim) throw AlgebraError("table has wrong number of rows");
    for (const auto& row : table) {
        if (row.size() != dim) throw AlgebraError("table row has wrong length");
        for (const auto& v : row)
            if (v.size() != dim) throw AlgebraError("table entry has wrong length");
    }
    if (labels.empty())
        for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
    if (labels.size() != dim) throw AlgebraError("labels have wrong length");

    Algebra<F> a(field, dim);
    a.name_ = std::move(name);
    a.labels_ = std::move(labels);
    a.unit_ = std::move(unit);
    a.table_ = std::move(table);
    a.sparse_.resize(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a.sparse_[i * dim + j] = a.to_sparse(a.table_[i][j]);
    a.unit_sparse_ = a.to_sparse(a.unit_);

    auto tuple = [](auto... idx) {
        std::string s = "(";
        bool first = true;
        ((s += (first ? "" : ",") + std::to_string(idx), first = false), ...);
        return s + ")";
    };
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (a.table_[i][j] != a.table_[j][i]) throw AlgebraError("not commutative at " + tuple(i, j));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t l = 0; l < dim; ++l) {
                auto left = a.mul(a.table_[i][j], a.basis(l));
                auto right = a.mul(a.basis(i), a.table_[j][l]);
                if (left != right) throw AlgebraError("not associative at " + tuple(i, j, l));
            }
    for (std::size_t i = 0; i < dim; ++i)
        if (a.mul(a.unit_, a.basis(i)) != a.basis(i)) throw AlgebraError("unit law fails at " + tuple(i));
    return a;
}

/// k[x_1..x_r]/(x_1^{m_1}, ..., x_r^{m_r}) with the monomial basis in lexicographic exponent order.
template <ExactField F>
Algebra<F> truncated_poly_multi(const F& field, const std::vector<std::size_t>& truncations, std::string name) {
    if (truncations.empty()) throw AlgebraError("need at least one variable");
    std::size_t dim = 1;
    for (auto m : truncations) {
        if (m == 0) throw AlgebraError("truncation order must be at least 1");
        dim *= m;
    }
    const std::size_t vars = truncations.size();
    auto exponents = [&](std::size_t idx) {
        std::vector<std::size_t> e(vars);
        for (std::size_t v = vars; v-- > 0;) {
            e[v] = idx % truncations[v];
            idx /= truncations[v];
        }
        return e;
    };
    auto index_of = [&](const std::vector<std::size_t>& e) {
        std::size_t idx = 0;
        for (std::size_t v = 0; v < vars; ++v) idx = idx * truncations[v] + e[v];
        return idx;
    };
    static const char* names[] = {"x", "y", "z", "w"};
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (std::size_t i = 0; i < dim; ++i) {
        auto e = exponents(i);
        std::string label;
        int weight = 0;
        for (std::size_t v = 0; v < vars; ++v) {
            weight += static_cast<int>(e[v]);
            if (e[v] == 0) continue;
            label += (v < 4 ? names[v] : "x" + std::to_string(v));
            if (e[v] > 1) label += "^" + std::to_string(e[v]);
        }
        labels.push_back(label.empty() ? "1" : label);
        weights.push_back(weight);
    }
    typename Algebra<F>::Table table(dim, std::vector<Vector<F>>(dim, Vector<F>(dim, field.zero())));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            auto a = exponents(i), b = exponents(j);
            bool vanishes = false;
            for (std::size_t v = 0; v < vars; ++v) {
                a[v] += b[v];
                if (a[v] >= truncations[v]) vanishes = true;
            }
            if (!vanishes) table[i][j][index_of(a)] = field.one();
        }
    Vector<F> unit(dim, field.zero());
    unit[0] = field.one();
    auto alg = make_algebra(field, dim, std::move(unit), std::move(table), std::move(labels), std::move(name));
    alg.set_monomial_weights(std::move(weights));
    return alg;
}

/// k[x]/(x^m) with basis 1, x, ..., x^{m-1}.
template <ExactField F>
Algebra<F> truncated_poly(std::size_t m, const F& field) {
    if (m == 0) throw AlgebraError("truncation order must be at least 1");
    return truncated_poly_multi(field, {m}, "trunc:" + std::to_string(m));
}

/// k[x]/(x^m) (x) k[y]/(y^n).
template <ExactField F>
Algebra<F> truncated_poly2(std::size_t m, std::size_t n, const F& field) {
    return truncated_poly_multi(field, {m, n}, "trunc2:" + std::to_string(m) + "," + std::to_string(n));
}

template <ExactField F>
Algebra<F> ground_field(const F& field) {
    auto a = truncated_poly_multi(field, {1}, "k");
    return a;
}

template <ExactField F>
Algebra<F> dual_numbers(const F& field) {
    return truncated_poly_multi(field, {2}, "dual");
}

}  // namespace hhs2
