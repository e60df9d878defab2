/**
 * @file simplicial.hpp
 * @brief Finite pointed simplicial sets and the Hochschild-Pirashvili cochain functor.
 *
 * A pointed set of size v+1 has elements 0..v with 0 the basepoint. A
 * cochain over it is a multilinear map A^{(x)v} -> A. A pointed map
 * phi: V -> W pulls a cochain f over W back to
 *
 *     (phi^* f)(a_1 (x) ... (x) a_v) = b_0 f(b_1 (x) ... (x) b_w),
 *     b_i = product of the a_j with phi(j) = i, j != basepoint,
 *
 * and the coboundary of a simplicial set is the alternating sum of the
 * pulled-back face maps. This is the generic construction; the closed-form
 * 2-sphere differential in s2_complex.hpp is checked against it.
 */
#pragma once

#include "cochain.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhs2 {

struct PointedMap {
    std::size_t source_size = 1;
    std::size_t target_size = 1;
    std::vector<std::size_t> image;  // image[0] == 0

    PointedMap() : image{0} {}
    PointedMap(std::size_t source, std::size_t target, std::vector<std::size_t> img)
        : source_size(source), target_size(target), image(std::move(img)) {
        if (source == 0 || target == 0) throw std::invalid_argument("pointed sets have at least one element");
        if (image.size() != source) throw std::invalid_argument("pointed map has wrong length");
        if (image[0] != 0) throw std::invalid_argument("pointed map must fix the basepoint");
        for (auto x : image)
            if (x >= target) throw std::invalid_argument("pointed map leaves its target");
    }

    static PointedMap identity(std::size_t size) {
        std::vector<std::size_t> img(size);
        for (std::size_t k = 0; k < size; ++k) img[k] = k;
        return PointedMap(size, size, std::move(img));
    }

    std::size_t operator()(std::size_t x) const { return image.at(x); }

    friend bool operator==(const PointedMap&, const PointedMap&) = default;
};

/// outer after inner.
inline PointedMap compose(const PointedMap& outer, const PointedMap& inner) {
    if (inner.target_size != outer.source_size) throw std::invalid_argument("pointed maps do not compose");
    std::vector<std::size_t> img(inner.source_size);
    for (std::size_t x = 0; x < inner.source_size; ++x) img[x] = outer(inner(x));
    return PointedMap(inner.source_size, outer.target_size, std::move(img));
}

class SimplicialModel {
public:
    SimplicialModel(std::string name, std::vector<std::size_t> sizes) : name_(std::move(name)), sizes_(std::move(sizes)) {
        faces_.resize(sizes_.size());
        degeneracies_.resize(sizes_.size());
    }

    const std::string& name() const { return name_; }
    std::size_t max_level() const { return sizes_.size() - 1; }
    std::size_t size(std::size_t n) const { return sizes_.at(n); }

    /// d_i : X_n -> X_{n-1}, 0 <= i <= n.
    const PointedMap& face(std::size_t n, std::size_t i) const { return faces_.at(n).at(i); }
    /// s_i : X_n -> X_{n+1}, 0 <= i <= n (stored for n < max_level()).
    const PointedMap& degeneracy(std::size_t n, std::size_t i) const { return degeneracies_.at(n).at(i); }

    void set_faces(std::size_t n, std::vector<PointedMap> maps) { faces_.at(n) = std::move(maps); }
    void set_degeneracies(std::size_t n, std::vector<PointedMap> maps) { degeneracies_.at(n) = std::move(maps); }

    /// First violated simplicial identity, described in words, or nothing when all hold.
    std::optional<std::string> check_identities() const {
        auto tag = [](const char* what, std::size_t n, std::size_t i, std::size_t j) {
            return std::string(what) + " at level " + std::to_string(n) + " (i=" + std::to_string(i) +
                   ", j=" + std::to_string(j) + ")";
        };
        const std::size_t top = max_level();
        for (std::size_t n = 2; n <= top; ++n)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    if (compose(face(n - 1, i), face(n, j)) != compose(face(n - 1, j - 1), face(n, i)))
                        return tag("d_i d_j = d_{j-1} d_i fails", n, i, j);
        for (std::size_t n = 0; n + 1 <= top; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t i = 0; i <= n + 1; ++i) {
                    auto lhs = compose(face(n + 1, i), degeneracy(n, j));
                    PointedMap rhs;
                    if (i < j)
                        rhs = compose(degeneracy(n - 1, j - 1), face(n, i));
                    else if (i == j || i == j + 1)
                        rhs = PointedMap::identity(size(n));
                    else
                        rhs = compose(degeneracy(n - 1, j), face(n, i - 1));
                    if (lhs != rhs) return tag("face/degeneracy relation fails", n, i, j);
                }
        for (std::size_t n = 0; n + 2 <= top; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t i = 0; i <= j; ++i)
                    if (compose(degeneracy(n + 1, i), degeneracy(n, j)) !=
                        compose(degeneracy(n + 1, j + 1), degeneracy(n, i)))
                        return tag("s_i s_j = s_{j+1} s_i fails", n, i, j);
        return std::nullopt;
    }

private:
    std::string name_;
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<PointedMap>> faces_;
    std::vector<std::vector<PointedMap>> degeneracies_;
};

/// The element ^a Delta^b_c of level n = a+b+c+2 in the 2-sphere model.
struct S2Simplex {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    friend auto operator<=>(const S2Simplex&, const S2Simplex&) = default;
};

/// Non-basepoint elements of X_n for the 2-sphere, in lexicographic (a, b) order.
inline std::vector<S2Simplex> s2_elements(std::size_t n) {
    std::vector<S2Simplex> out;
    if (n < 2) return out;
    for (std::size_t a = 0; a <= n - 2; ++a)
        for (std::size_t b = 0; a + b <= n - 2; ++b) out.push_back({a, b, n - 2 - a - b});
    return out;
}

namespace detail {

inline std::size_t s2_element_index(std::size_t n, const S2Simplex& s) {
    auto elems = s2_elements(n);
    for (std::size_t k = 0; k < elems.size(); ++k)
        if (elems[k] == s) return k + 1;
    throw std::logic_error("simplex not in level");
}

}  // namespace detail

/// The 2-sphere with X_n = {*} plus one simplex per (a,b,c) with a+b+c = n-2.
inline SimplicialModel s2_model(std::size_t n_max) {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 0; n <= n_max; ++n) sizes.push_back(1 + s2_elements(n).size());
    SimplicialModel model("S2", sizes);

    for (std::size_t n = 1; n <= n_max; ++n) {
        auto elems = s2_elements(n);
        std::vector<PointedMap> faces;
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<std::size_t> img{0};
            for (const auto& s : elems) {
                const auto [a, b, c] = s;
                std::optional<S2Simplex> t;
                if (i <= a) {
                    if (a != 0) t = S2Simplex{a - 1, b, c};
                } else if (i <= a + b + 1) {
                    if (b != 0) t = S2Simplex{a, b - 1, c};
                } else {
                    if (c != 0) t = S2Simplex{a, b, c - 1};
                }
                img.push_back(t ? detail::s2_element_index(n - 1, *t) : 0);
            }
            faces.emplace_back(sizes[n], sizes[n - 1], std::move(img));
        }
        model.set_faces(n, std::move(faces));
    }
    for (std::size_t n = 0; n < n_max; ++n) {
        auto elems = s2_elements(n);
        std::vector<PointedMap> degs;
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<std::size_t> img{0};
            for (const auto& s : elems) {
                const auto [a, b, c] = s;
                S2Simplex t = (i <= a) ? S2Simplex{a + 1, b, c}
                              : (i <= a + b + 1) ? S2Simplex{a, b + 1, c}
                                                 : S2Simplex{a, b, c + 1};
                img.push_back(detail::s2_element_index(n + 1, t));
            }
            degs.emplace_back(sizes[n], sizes[n + 1], std::move(img));
        }
        model.set_degeneracies(n, std::move(degs));
    }
    return model;
}

/**
 * The minimal circle Delta[1]/boundary. Level n consists of the binary words
 * of length n+1 that are monotone (0s then 1s); the two constant words are
 * identified to the basepoint. Element k (1 <= k <= n) is 0^k 1^{n+1-k}.
 * Faces delete a letter, degeneracies double one.
 */
inline SimplicialModel s1_model(std::size_t n_max) {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 0; n <= n_max; ++n) sizes.push_back(n + 1);
    SimplicialModel model("S1", sizes);

    using Word = std::vector<int>;
    auto word = [](std::size_t n, std::size_t k) {
        Word w(n + 1, 1);
        for (std::size_t p = 0; p < k; ++p) w[p] = 0;
        return w;
    };
    auto lookup = [](const Word& w) -> std::size_t {
        std::size_t zeros = 0;
        while (zeros < w.size() && w[zeros] == 0) ++zeros;
        if (zeros == 0 || zeros == w.size()) return 0;
        return zeros;
    };
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::vector<PointedMap> faces;
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<std::size_t> img{0};
            for (std::size_t k = 1; k <= n; ++k) {
                Word w = word(n, k);
                w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                img.push_back(lookup(w));
            }
            faces.emplace_back(sizes[n], sizes[n - 1], std::move(img));
        }
        model.set_faces(n, std::move(faces));
    }
    for (std::size_t n = 0; n < n_max; ++n) {
        std::vector<PointedMap> degs;
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<std::size_t> img{0};
            for (std::size_t k = 1; k <= n; ++k) {
                Word w = word(n, k);
                w.insert(w.begin() + static_cast<std::ptrdiff_t>(i), w[i]);
                img.push_back(lookup(w));
            }
            degs.emplace_back(sizes[n], sizes[n + 1], std::move(img));
        }
        model.set_degeneracies(n, std::move(degs));
    }
    return model;
}

/// phi^* f. The result has phi.source_size - 1 inputs and keeps f's degree label unless one is given.
template <ExactField F>
Cochain<F> pullback(const PointedMap& phi, const Cochain<F>& f, std::optional<int> degree = std::nullopt) {
    if (f.inputs() + 1 != phi.target_size) throw std::invalid_argument("cochain does not live over the map's target");
    const auto& alg = f.algebra();
    const std::size_t d = alg.dim();
    const std::size_t v = phi.source_size - 1;
    const std::size_t w = phi.target_size - 1;

    Cochain<F> out(f.algebra_ptr(), degree.value_or(f.degree()), v, std::numeric_limits<std::size_t>::max());
    TensorIndexer idx(d, v);
    std::vector<std::size_t> digits(v);
    std::vector<SparseVector<F>> b(w + 1);
    for (std::size_t t = 0; t < idx.count(); ++t) {
        idx.decode(t, digits);
        for (auto& x : b) x = alg.unit_sparse();
        for (std::size_t j = 1; j <= v; ++j) b[phi(j)] = alg.mul_basis(b[phi(j)], digits[j - 1]);
        auto inner = f.evaluate(std::span<const SparseVector<F>>(b).subspan(1));
        out.set(t, alg.mul(alg.to_dense(b[0]), inner));
    }
    return out;
}

/// Sum_i (-1)^i d_i^* f for f over level n; the faces are those of level n+1.
template <ExactField F>
Cochain<F> apply_boundary(const SimplicialModel& x, const Cochain<F>& f, std::size_t n) {
    if (n + 1 > x.max_level()) throw std::out_of_range("boundary needs level n+1 of the model");
    const F& field = f.field();
    Cochain<F> out(f.algebra_ptr(), static_cast<int>(n + 1), x.size(n + 1) - 1, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i <= n + 1; ++i) {
        auto term = pullback(x.face(n + 1, i), f, static_cast<int>(n + 1));
        term.scale(sign_of(field, static_cast<long long>(i)));
        out += term;
    }
    return out;
}

/// Matrix of the boundary C^n -> C^{n+1} in the flat pure-tensor bases.
template <ExactField F>
Matrix<F> boundary_matrix(const SimplicialModel& x, const Algebra<F>& alg, std::size_t n,
                          std::size_t cap = default_size_cap) {
    if (n + 1 > x.max_level()) throw std::out_of_range("boundary needs level n+1 of the model");
    const F& field = alg.field();
    const std::size_t d = alg.dim();
    const std::size_t v = x.size(n + 1) - 1;
    const std::size_t w = x.size(n) - 1;
    const std::size_t rows = checked_power(d, v + 1, cap);
    const std::size_t cols = checked_power(d, w + 1, cap);

    std::vector<Triplet<F>> triplets;
    TensorIndexer idx(d, v);
    std::vector<std::size_t> digits(v);
    std::vector<SparseVector<F>> b(w + 1);
    std::vector<SparseVector<F>> coeff_times_basis(d);
    for (std::size_t i = 0; i <= n + 1; ++i) {
        const auto& phi = x.face(n + 1, i);
        const auto sign = sign_of(field, static_cast<long long>(i));
        for (std::size_t t = 0; t < idx.count(); ++t) {
            idx.decode(t, digits);
            for (auto& e : b) e = alg.unit_sparse();
            for (std::size_t j = 1; j <= v; ++j) b[phi(j)] = alg.mul_basis(b[phi(j)], digits[j - 1]);
            if (b[0].empty()) continue;
            for (std::size_t q = 0; q < d; ++q) coeff_times_basis[q] = alg.mul_basis(b[0], q);
            expand_tensor(field, d, std::span<const SparseVector<F>>(b).subspan(1),
                          [&](std::size_t s, const typename F::Scalar& weight) {
                              auto sw = field.mul(sign, weight);
                              for (std::size_t q = 0; q < d; ++q)
                                  for (const auto& e : coeff_times_basis[q])
                                      triplets.push_back({t * d + e.index, s * d + q, field.mul(sw, e.value)});
                          });
        }
    }
    return Matrix<F>::from_triplets(field, rows, cols, std::move(triplets));
}

}  // namespace hhs2
