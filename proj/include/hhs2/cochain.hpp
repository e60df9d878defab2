/**
 * @file cochain.hpp
 * @brief Multilinear maps A^{(x)v} -> A stored as value tables on basis pure tensors.
 *
 * A basis pure tensor e_{t_1} (x) ... (x) e_{t_v} is encoded as the base-d
 * number t_1 t_2 ... t_v (first factor most significant). The flat
 * coordinate of output coordinate r at tensor t is t * d + r, so a cochain
 * with v inputs lives in a space of dimension d^{v+1}.
 */
#pragma once

#include "algebra.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace hhs2 {

class SizeCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default bound on the number of scalars in one cochain space.
inline constexpr std::size_t default_size_cap = std::size_t{1} << 20;

/// d^e, throwing SizeCapExceeded once the result would pass cap.
inline std::size_t checked_power(std::size_t d, std::size_t e, std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < e; ++k) {
        if (d != 0 && r > cap / d) throw SizeCapExceeded("cochain space exceeds the size cap");
        r *= d;
    }
    if (r > cap) throw SizeCapExceeded("cochain space exceeds the size cap");
    return r;
}

/// Number of tensor positions of a degree-n cochain on the 2-sphere.
constexpr std::size_t s2_inputs(std::size_t n) { return n * (n == 0 ? 0 : n - 1) / 2; }

/// Encodes and decodes multi-indices of basis pure tensors.
class TensorIndexer {
public:
    TensorIndexer(std::size_t dim, std::size_t inputs) : dim_(dim), inputs_(inputs) {
        count_ = 1;
        for (std::size_t k = 0; k < inputs; ++k) count_ *= dim;
    }
    std::size_t count() const { return count_; }
    std::size_t inputs() const { return inputs_; }

    void decode(std::size_t t, std::span<std::size_t> digits) const {
        for (std::size_t k = inputs_; k-- > 0;) {
            digits[k] = t % dim_;
            t /= dim_;
        }
    }
    std::vector<std::size_t> decode(std::size_t t) const {
        std::vector<std::size_t> d(inputs_);
        decode(t, d);
        return d;
    }
    std::size_t encode(std::span<const std::size_t> digits) const {
        std::size_t t = 0;
        for (auto x : digits) t = t * dim_ + x;
        return t;
    }

private:
    std::size_t dim_;
    std::size_t inputs_;
    std::size_t count_;
};

namespace detail {

template <ExactField F, class Visit>
void expand_from(const F& field, std::size_t dim, std::span<const SparseVector<F>> entries, std::size_t level,
                 std::size_t index, const typename F::Scalar& weight, Visit& visit) {
    if (level == entries.size()) {
        visit(index, weight);
        return;
    }
    for (const auto& term : entries[level])
        expand_from(field, dim, entries, level + 1, index * dim + term.index, field.mul(weight, term.value), visit);
}

}  // namespace detail

/**
 * Visits every basis tensor in the multilinear expansion of
 * x_1 (x) ... (x) x_v, reporting its index and product coefficient.
 */
template <ExactField F, class Visit>
void expand_tensor(const F& field, std::size_t dim, std::span<const SparseVector<F>> entries, Visit&& visit) {
    detail::expand_from(field, dim, entries, 0, 0, field.one(), visit);
}

template <ExactField F>
class Cochain {
public:
    using Scalar = typename F::Scalar;
    using Element = Vector<F>;
    using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

    /// The zero map with the given number of tensor inputs; degree is a label for the grading.
    Cochain(AlgebraPtr algebra, int degree, std::size_t inputs, std::size_t cap = default_size_cap)
        : algebra_(std::move(algebra)), degree_(degree), inputs_(inputs) {
        const std::size_t d = algebra_->dim();
        tensors_ = checked_power(d, inputs_, cap);
        values_.assign(checked_power(d, inputs_ + 1, cap), algebra_->field().zero());
    }

    /// Zero cochain in C^n of the 2-sphere complex.
    static Cochain s2(AlgebraPtr algebra, int degree, std::size_t cap = default_size_cap) {
        if (degree < 0) throw std::invalid_argument("negative cochain degree");
        return Cochain(std::move(algebra), degree, s2_inputs(static_cast<std::size_t>(degree)), cap);
    }

    /// Cochain with the given flat coordinates.
    static Cochain from_coords(AlgebraPtr algebra, int degree, std::size_t inputs, Vector<F> coords) {
        Cochain c(std::move(algebra), degree, inputs, std::numeric_limits<std::size_t>::max());
        if (coords.size() != c.values_.size()) throw std::invalid_argument("dimension mismatch");
        c.values_ = std::move(coords);
        return c;
    }

    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    const Algebra<F>& algebra() const { return *algebra_; }
    const F& field() const { return algebra_->field(); }
    int degree() const { return degree_; }
    std::size_t inputs() const { return inputs_; }
    std::size_t tensors() const { return tensors_; }
    std::size_t dim() const { return values_.size(); }
    TensorIndexer indexer() const { return TensorIndexer(algebra_->dim(), inputs_); }

    const Vector<F>& coords() const { return values_; }
    std::span<const Scalar> value(std::size_t tensor) const {
        return {values_.data() + tensor * algebra_->dim(), algebra_->dim()};
    }
    Element value_vector(std::size_t tensor) const {
        auto v = value(tensor);
        return Element(v.begin(), v.end());
    }
    void set(std::size_t tensor, const Element& x) {
        if (x.size() != algebra_->dim()) throw std::invalid_argument("dimension mismatch");
        std::copy(x.begin(), x.end(), values_.begin() + tensor * algebra_->dim());
    }
    void add_to(std::size_t tensor, const Element& x) {
        const F& f = field();
        for (std::size_t r = 0; r < x.size(); ++r) {
            auto& slot = values_[tensor * algebra_->dim() + r];
            slot = f.add(slot, x[r]);
        }
    }

    /// f(x_1 (x) ... (x) x_v) for arbitrary algebra elements, by multilinear expansion.
    Element evaluate(std::span<const SparseVector<F>> entries) const {
        if (entries.size() != inputs_) throw std::invalid_argument("wrong number of tensor entries");
        const F& f = field();
        const std::size_t d = algebra_->dim();
        Element out(d, f.zero());
        expand_tensor(f, d, entries, [&](std::size_t t, const Scalar& w) {
            for (std::size_t r = 0; r < d; ++r) {
                const auto& x = values_[t * d + r];
                if (!f.is_zero(x)) out[r] = f.add(out[r], f.mul(w, x));
            }
        });
        return out;
    }

    bool is_zero() const {
        const F& f = field();
        return std::all_of(values_.begin(), values_.end(), [&](const Scalar& s) { return f.is_zero(s); });
    }

    /// Index of the first tensor where the two cochains differ, or tensors() if they agree.
    std::size_t first_difference(const Cochain& other) const {
        check_compatible(other);
        const std::size_t d = algebra_->dim();
        for (std::size_t k = 0; k < values_.size(); ++k)
            if (!(values_[k] == other.values_[k])) return k / d;
        return tensors_;
    }

    Cochain& operator+=(const Cochain& o) {
        check_compatible(o);
        const F& f = field();
        for (std::size_t k = 0; k < values_.size(); ++k) values_[k] = f.add(values_[k], o.values_[k]);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        check_compatible(o);
        const F& f = field();
        for (std::size_t k = 0; k < values_.size(); ++k) values_[k] = f.sub(values_[k], o.values_[k]);
        return *this;
    }
    Cochain& scale(const Scalar& c) {
        const F& f = field();
        for (auto& x : values_) x = f.mul(c, x);
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Scalar& c, Cochain a) { return a.scale(c); }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.inputs_ == b.inputs_ && *a.algebra_ == *b.algebra_ && a.values_ == b.values_;
    }

private:
    void check_compatible(const Cochain& o) const {
        require_same_field(field(), o.field());
        if (o.inputs_ != inputs_ || o.algebra_->dim() != algebra_->dim())
            throw std::invalid_argument("cochains live in different spaces");
    }

    AlgebraPtr algebra_;
    int degree_;
    std::size_t inputs_;
    std::size_t tensors_;
    Vector<F> values_;
};

/// Uniformly random cochain with the given shape.
template <ExactField F, class Rng>
Cochain<F> random_cochain(const typename Cochain<F>::AlgebraPtr& algebra, int degree, std::size_t inputs, Rng& rng) {
    Cochain<F> c(algebra, degree, inputs);
    Vector<F> coords(c.dim());
    for (auto& x : coords) x = algebra->field().random(rng);
    return Cochain<F>::from_coords(algebra, degree, inputs, std::move(coords));
}

template <ExactField F, class Rng>
Cochain<F> random_s2_cochain(const typename Cochain<F>::AlgebraPtr& algebra, int degree, Rng& rng) {
    return random_cochain<F>(algebra, degree, s2_inputs(static_cast<std::size_t>(degree)), rng);
}

/// The basis cochain taking basis tensor `tensor` to e_r and every other basis tensor to zero.
template <ExactField F>
Cochain<F> basis_cochain(const typename Cochain<F>::AlgebraPtr& algebra, int degree, std::size_t inputs,
                         std::size_t flat_index) {
    Cochain<F> c(algebra, degree, inputs);
    Vector<F> coords(c.dim(), algebra->field().zero());
    coords.at(flat_index) = algebra->field().one();
    return Cochain<F>::from_coords(algebra, degree, inputs, std::move(coords));
}

}  // namespace hhs2
