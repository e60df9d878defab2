#pragma once

// Independent constructions of the same differentials, compared as exact matrices.

#include "operad.hpp"
#include "simplicial.hpp"

#include <optional>
#include <string>

namespace hhs2 {

/// The classical Hochschild coboundary of f : A^{(x)n} -> A, evaluated term by term.
template <ExactField F>
Cochain<F> classical_hochschild(const Cochain<F>& f) {
    const auto& alg = f.algebra();
    const F& field = alg.field();
    const std::size_t n = f.inputs();
    Cochain<F> out(f.algebra_ptr(), f.degree() + 1, n + 1);
    TensorIndexer idx(alg.dim(), n + 1);
    std::vector<SparseVector<F>> args(n);
    for (std::size_t t = 0; t < idx.count(); ++t) {
        const auto a = idx.decode(t);
        auto e = [&](std::size_t k) { return alg.to_sparse(alg.basis(a[k])); };
        auto total = alg.zero();
        auto accumulate = [&](const Vector<F>& v, bool negative) {
            for (std::size_t r = 0; r < v.size(); ++r)
                total[r] = negative ? field.sub(total[r], v[r]) : field.add(total[r], v[r]);
        };

        for (std::size_t k = 0; k < n; ++k) args[k] = e(k + 1);
        accumulate(alg.mul(alg.basis(a[0]), f.evaluate(args)), false);

        for (std::size_t i = 1; i <= n; ++i) {
            std::size_t slot = 0;
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == i) continue;
                args[slot++] = (k == i - 1) ? alg.basis_product(a[k], a[k + 1]) : e(k);
            }
            accumulate(f.evaluate(args), i % 2 == 1);
        }

        for (std::size_t k = 0; k < n; ++k) args[k] = e(k);
        accumulate(alg.mul(f.evaluate(args), alg.basis(a[n])), (n + 1) % 2 == 1);
        out.set(t, total);
    }
    return out;
}

/// Matrix of the classical coboundary on n inputs, assembled column by column.
template <ExactField F>
Matrix<F> classical_hochschild_matrix(const typename Cochain<F>::AlgebraPtr& alg, std::size_t n,
                                      std::size_t cap = default_size_cap) {
    const F& field = alg->field();
    const std::size_t cols = checked_power(alg->dim(), n + 1, cap);
    const std::size_t rows = checked_power(alg->dim(), n + 2, cap);
    std::vector<Triplet<F>> triplets;
    for (std::size_t j = 0; j < cols; ++j) {
        Vector<F> e(cols, field.zero());
        e[j] = field.one();
        auto image = classical_hochschild(Cochain<F>::from_coords(alg, static_cast<int>(n), n, std::move(e)));
        for (std::size_t i = 0; i < rows; ++i)
            if (!field.is_zero(image.coords()[i])) triplets.push_back({i, j, image.coords()[i]});
    }
    return Matrix<F>::from_triplets(field, rows, cols, std::move(triplets));
}

/// "row r, column c" for the first entry (row-major) where two equally sized matrices differ.
template <ExactField F>
std::optional<std::string> first_matrix_difference(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return "shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
               std::to_string(b.rows()) + "x" + std::to_string(b.cols());
    if (a == b) return std::nullopt;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!(a.at(i, j) == b.at(i, j))) return "row " + std::to_string(i) + ", column " + std::to_string(j);
    return "unequal";
}

/**
 * For n = 0..max_degree (as far as the cap allows):
 * closed-form delta against the 2-sphere simplicial boundary, delta o delta = 0,
 * and the circle-model boundary against the classical Hochschild coboundary.
 */
template <ExactField F>
VerificationReport verify_crosscheck(const typename Cochain<F>::AlgebraPtr& alg, std::size_t max_degree,
                                     std::size_t cap = default_size_cap) {
    VerificationReport report{"crosscheck", 0, {}};
    auto& sphere = report.check("closed-form delta equals the 2-sphere simplicial boundary");
    auto& square = report.check("delta o delta = 0");
    auto& circle = report.check("circle-model boundary equals the classical Hochschild coboundary");
    const auto x2 = s2_model(max_degree + 2);
    const auto x1 = s1_model(max_degree + 1);
    const std::string where = " (" + alg->name() + ")";

    for (std::size_t n = 0; n <= max_degree; ++n) {
        const std::string tag = "degree " + std::to_string(n) + where;
        if (fits(*alg, n + 1, cap)) {
            auto closed = delta_matrix(*alg, n, cap);
            auto diff = first_matrix_difference(closed, boundary_matrix(x2, *alg, n, cap));
            sphere.record(!diff, tag + ": " + diff.value_or(""));
            if (fits(*alg, n + 2, cap)) {
                auto composite = delta_matrix(*alg, n + 1, cap) * closed;
                square.record(composite.nnz() == 0, tag + ": nonzero composite");
            } else {
                ++square.skipped;
            }
        } else {
            ++sphere.skipped;
            ++square.skipped;
        }
        try {
            auto diff = first_matrix_difference(boundary_matrix(x1, *alg, n, cap),
                                                classical_hochschild_matrix<F>(alg, n, cap));
            circle.record(!diff, tag + ": " + diff.value_or(""));
        } catch (const SizeCapExceeded&) {
            ++circle.skipped;
        }
    }
    return report;
}

}  // namespace hhs2
