/**
 * @file deformation.hpp
 * @brief Order-by-order lifting of u(a) = a + u_1(a) t + u_2(a) t^2 + ...
 * subject to u(ab) u(c) = u(a) u(bc).
 *
 * Comparing t^k coefficients gives delta_2(u_k) = sum_{i+j=k} u_i o u_j, so
 * u_1 must be a 2-cocycle and each further u_{n+1} exists exactly when
 * omega_n = sum_{i=1}^n u_i o u_{n+1-i} is a coboundary.
 */
#pragma once

#include "cohomology.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace hhs2 {

class DeformationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <ExactField F>
struct DeformationState {
    using AlgebraPtr = typename Cochain<F>::AlgebraPtr;

    AlgebraPtr algebra;
    std::vector<Cochain<F>> u;  // u[0] is u_1
    /// Largest n with the identity confirmed mod t^{n+1}; set by verify().
    std::size_t verified = 0;

    std::size_t order() const { return u.size(); }
    /// u_i for i >= 1; u_0 is the identity.
    const Cochain<F>& at(std::size_t i) const { return u.at(i - 1); }
};

namespace detail {

template <ExactField F>
void require_linear_map(const Cochain<F>& f) {
    if (f.degree() != 2 || f.inputs() != 1) throw DeformationError("expected a degree-2 cochain (a linear map A -> A)");
}

}  // namespace detail

/// (f o g)(a, b, c) = f(bc) g(a) - f(ab) g(c) on the triangle (a, b, c) = (a12, a13, a23).
template <ExactField F>
Cochain<F> circ2(const Cochain<F>& f, const Cochain<F>& g) {
    detail::require_linear_map(f);
    detail::require_linear_map(g);
    const auto& alg = f.algebra();
    const F& field = alg.field();
    const std::size_t d = alg.dim();
    auto out = Cochain<F>::s2(f.algebra_ptr(), 3);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                auto bc = f.evaluate(std::vector<SparseVector<F>>{alg.basis_product(b, c)});
                auto ab = f.evaluate(std::vector<SparseVector<F>>{alg.basis_product(a, b)});
                auto left = alg.mul(bc, g.value_vector(a));
                auto right = alg.mul(ab, g.value_vector(c));
                for (std::size_t r = 0; r < d; ++r) left[r] = field.sub(left[r], right[r]);
                out.set((a * d + b) * d + c, left);
            }
    return out;
}

/// Coefficient of t^k in u(ab)u(c) - u(a)u(bc) at the basis triple (a, b, c).
template <ExactField F>
Vector<F> truncated_defect(const DeformationState<F>& s, std::size_t k, std::size_t a, std::size_t b, std::size_t c) {
    const auto& alg = *s.algebra;
    const F& field = alg.field();
    auto apply = [&](std::size_t i, const SparseVector<F>& x) {
        if (i == 0) return alg.to_dense(x);
        if (i > s.order()) return alg.zero();
        return s.at(i).evaluate(std::vector<SparseVector<F>>{x});
    };
    const auto ea = alg.to_sparse(alg.basis(a)), ec = alg.to_sparse(alg.basis(c));
    const auto& ab = alg.basis_product(a, b);
    const auto& bc = alg.basis_product(b, c);
    auto total = alg.zero();
    for (std::size_t i = 0; i <= k; ++i) {
        const std::size_t j = k - i;
        auto left = alg.mul(apply(i, ab), apply(j, ec));
        auto right = alg.mul(apply(i, ea), apply(j, bc));
        for (std::size_t r = 0; r < total.size(); ++r) total[r] = field.add(total[r], field.sub(left[r], right[r]));
    }
    return total;
}

/// First basis triple where the t^k coefficient fails, as "(x, x^2, 1)".
template <ExactField F>
std::optional<std::string> first_defect(const DeformationState<F>& s, std::size_t k) {
    const auto& alg = *s.algebra;
    const std::size_t d = alg.dim();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                auto v = truncated_defect(s, k, a, b, c);
                if (std::any_of(v.begin(), v.end(), [&](const auto& x) { return !alg.field().is_zero(x); }))
                    return "(" + alg.labels()[a] + ", " + alg.labels()[b] + ", " + alg.labels()[c] + ")";
            }
    return std::nullopt;
}

/**
 * Largest n <= N such that u(ab)u(c) = u(a)u(bc) holds mod t^{n+1} on every
 * basis triple, with u_i = 0 for i beyond the state's order.
 */
template <ExactField F>
std::size_t verify_truncated(const DeformationState<F>& s, std::size_t N) {
    for (std::size_t k = 1; k <= N; ++k)
        if (first_defect(s, k)) return k - 1;
    return N;
}

/// Runs verify_truncated up to the state's order and records the result.
template <ExactField F>
DeformationState<F>& verify(DeformationState<F>& s) {
    s.verified = verify_truncated(s, s.order());
    return s;
}

template <ExactField F>
struct ObstructionClass {
    Cochain<F> omega;
    bool cocycle = false;
    /// Coordinates in the H^3 representative basis; empty when omega is not a cocycle.
    Vector<F> coordinates;

    bool vanishes() const {
        return cocycle && std::all_of(coordinates.begin(), coordinates.end(),
                                      [&](const auto& x) { return omega.field().is_zero(x); });
    }
};

/// omega_n = sum_{i=1}^n u_i o u_{n+1-i}.
template <ExactField F>
Cochain<F> obstruction_cochain(const DeformationState<F>& s, std::size_t n) {
    auto omega = Cochain<F>::s2(s.algebra, 3);
    for (std::size_t i = 1; i <= n; ++i) omega += circ2(s.at(i), s.at(n + 1 - i));
    return omega;
}

template <ExactField F>
ObstructionClass<F> obstruction(Complex<F>& complex, const DeformationState<F>& s) {
    const std::size_t n = s.order();
    if (n == 0 || s.verified < n) throw DeformationError("state not verified to claimed order");
    ObstructionClass<F> result{obstruction_cochain(s, n), false, {}};
    result.cocycle = complex.is_cocycle(result.omega);
    if (result.cocycle) result.coordinates = complex.class_coordinates(result.omega);
    return result;
}

/**
 * Solves delta_2(u_{n+1}) = omega_n. On success the returned state has order
 * n+1 and has been re-verified by the truncated identity; when omega_n is not
 * a coboundary nothing is returned.
 */
template <ExactField F>
std::optional<DeformationState<F>> lift_step(Complex<F>& complex, const DeformationState<F>& s) {
    const std::size_t n = s.order();
    if (n == 0 || s.verified < n) throw DeformationError("state not verified to claimed order");
    auto omega = obstruction_cochain(s, n);
    auto x = solve(complex.delta(2), omega.coords());
    if (!x) return std::nullopt;
    DeformationState<F> next = s;
    next.u.push_back(complex.cochain(2, std::move(*x)));
    verify(next);
    if (next.verified < n + 1) throw std::logic_error("lifted state fails the truncated identity");
    return next;
}

/// Starts a state from u_1; u_1 must be a 2-cocycle.
template <ExactField F>
DeformationState<F> start_deformation(const Cochain<F>& u1) {
    detail::require_linear_map(u1);
    DeformationState<F> s{u1.algebra_ptr(), {u1}, 0};
    verify(s);
    if (s.verified < 1) throw DeformationError("u1 is not a 2-cocycle: fails at basis triple " + *first_defect(s, 1));
    return s;
}

/// u_1(m) = w(m) m for every monomial m of weight w: x d/dx, or x d/dx + y d/dy.
template <ExactField F>
Cochain<F> euler_derivation(const typename Cochain<F>::AlgebraPtr& alg) {
    const auto& weights = alg->monomial_weights();
    if (!weights) throw DeformationError("algebra is not a truncated polynomial algebra");
    auto u = Cochain<F>::s2(alg, 2);
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        auto v = alg->basis(i);
        v[i] = alg->field().from_int((*weights)[i]);
        u.set(i, v);
    }
    if (!delta(u).is_zero()) throw std::logic_error("Euler derivation is not a cocycle");
    return u;
}

/// u_n(m) = C(w, n) m for monomials of weight w: the expansion of x -> (1+t)x.
template <ExactField F>
DeformationState<F> geometric_state(const typename Cochain<F>::AlgebraPtr& alg, std::size_t order) {
    const auto& weights = alg->monomial_weights();
    if (!weights) throw DeformationError("algebra is not a truncated polynomial algebra");
    const F& field = alg->field();
    DeformationState<F> s{alg, {}, 0};
    for (std::size_t n = 1; n <= order; ++n) {
        auto u = Cochain<F>::s2(alg, 2);
        for (std::size_t i = 0; i < alg->dim(); ++i) {
            // C(w, n) built multiplicatively in the field
            auto w = static_cast<std::int64_t>((*weights)[i]);
            auto binom = field.one();
            for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
                binom = field.div(field.mul(binom, field.from_int(w - k)), field.from_int(k + 1));
            auto v = alg->zero();
            v[i] = binom;
            u.set(i, v);
        }
        s.u.push_back(std::move(u));
    }
    verify(s);
    return s;
}

template <ExactField F>
struct LiftRecord {
    std::size_t from_order = 0;   ///< n: the order the state was verified to before this step
    bool obstruction_cocycle = false;
    Vector<F> obstruction_class;  ///< coordinates of [omega_n] in H^3
    bool lift_found = false;
    std::size_t order_reached = 0;
};

template <ExactField F>
struct DeformationRun {
    DeformationState<F> state;
    std::vector<LiftRecord<F>> steps;
    bool complete = false;  ///< reached the requested order
};

/// Lifts from u_1 until order N, stopping at the first nonzero obstruction class.
template <ExactField F>
DeformationRun<F> run_deformation(Complex<F>& complex, const Cochain<F>& u1, std::size_t N) {
    DeformationRun<F> run{start_deformation(u1), {}, false};
    while (run.state.order() < N) {
        LiftRecord<F> rec;
        rec.from_order = run.state.order();
        auto obs = obstruction(complex, run.state);
        rec.obstruction_cocycle = obs.cocycle;
        rec.obstruction_class = obs.coordinates;
        if (!obs.cocycle) {
            rec.order_reached = run.state.verified;
            run.steps.push_back(std::move(rec));
            return run;
        }
        auto next = lift_step(complex, run.state);
        rec.lift_found = next.has_value();
        if (next) {
            if (!obs.vanishes()) throw std::logic_error("lift found although the obstruction class is nonzero");
            run.state = std::move(*next);
        } else if (obs.vanishes()) {
            throw std::logic_error("no lift although the obstruction class vanishes");
        }
        rec.order_reached = run.state.verified;
        const bool lifted = rec.lift_found;
        run.steps.push_back(std::move(rec));
        if (!lifted) return run;
    }
    run.complete = true;
    return run;
}

/// A uniformly random element of Z^2, used to seed randomized lifting runs.
template <ExactField F, class Rng>
Cochain<F> random_two_cocycle(Complex<F>& complex, Rng& rng) {
    const F& field = complex.algebra().field();
    const auto& basis = complex.cocycle_basis(2);
    Vector<F> v(complex.dim_c(2), field.zero());
    for (const auto& b : basis) {
        auto c = field.random(rng);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = field.add(v[k], field.mul(c, b[k]));
    }
    return complex.cochain(2, std::move(v));
}

}  // namespace hhs2
