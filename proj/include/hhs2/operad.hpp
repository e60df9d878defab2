/**
 * @file operad.hpp
 * @brief Partial compositions on {C^n}_{n>=1}, and the brace algebra they generate.
 *
 * For f of arity n and g of arity m, f o_i g has arity n+m-1: g eats the
 * diagonal block T_i^m of the big triangle, the rectangle above the block
 * is multiplied along rows (H) into column i of f's triangle, and the
 * rectangle right of the block is multiplied along columns (V) into row i.
 *
 * The shifted degree of an arity-n element is |f| = n - 1. The operad unit
 * is the arity-1 map alpha -> alpha * 1_A, and the identity map A -> A in
 * arity 2 is a multiplication (m o m = 0); it induces the cup product and
 * the differential d(f) = m o f - (-1)^{|f|} f o m.
 */
#pragma once

#include "s2_complex.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace hhs2 {

/// Sign exponent attached to the insertion slots of a brace.
enum class BraceSign {
    /// sum_p |y_p| (i_p - 1): reduces to (-1)^{(i-1)(m-1)} for one argument.
    slot_minus_one,
    /// sum_p |y_p| i_p
    slot,
    /// sum_p |y_p| (j_p - 1), where j_p = i_p + |y_1| + ... + |y_{p-1}| is the slot y_p
    /// actually occupies in the composite. Each insertion carries the sign it has in f o g.
    composite_slot,
};

template <ExactField F>
std::size_t arity(const Cochain<F>& f) {
    if (f.degree() < 1 || f.inputs() != s2_inputs(static_cast<std::size_t>(f.degree())))
        throw std::invalid_argument("operad elements are 2-sphere cochains of arity >= 1");
    return static_cast<std::size_t>(f.degree());
}

template <ExactField F>
long long shifted_degree(const Cochain<F>& f) {
    return static_cast<long long>(arity(f)) - 1;
}

/// The operad unit in arity 1: alpha -> alpha * 1_A.
template <ExactField F>
Cochain<F> unit_element(const typename Cochain<F>::AlgebraPtr& alg) {
    auto u = Cochain<F>::s2(alg, 1);
    u.set(0, alg->unit());
    return u;
}

/// The multiplication: the identity map A -> A in arity 2.
template <ExactField F>
Cochain<F> multiplication(const typename Cochain<F>::AlgebraPtr& alg) {
    auto m = Cochain<F>::s2(alg, 2);
    for (std::size_t t = 0; t < alg->dim(); ++t) m.set(t, alg->basis(t));
    return m;
}

template <ExactField F>
Cochain<F> comp_i(const Cochain<F>& f, const Cochain<F>& g, std::size_t i, std::size_t cap = default_size_cap) {
    const std::size_t n = arity(f), m = arity(g);
    if (i < 1 || i > n) throw std::out_of_range("insertion slot " + std::to_string(i) + " outside 1.." + std::to_string(n));
    require_same_field(f.field(), g.field());
    const auto& alg = f.algebra();
    auto plan = CollapsePlan::insertion(n, m, i);
    auto out = Cochain<F>::s2(f.algebra_ptr(), static_cast<int>(n + m - 1), cap);

    TensorIndexer idx(alg.dim(), tri_size(n + m - 1));
    TensorIndexer inner_idx(alg.dim(), tri_size(m));
    std::vector<std::size_t> digits(idx.inputs()), inner;
    std::vector<SparseVector<F>> entries;
    SparseVector<F> coefficient;
    for (std::size_t t = 0; t < idx.count(); ++t) {
        idx.decode(t, digits);
        plan.apply(alg, digits, entries, coefficient, inner);
        auto gv = g.value_vector(inner_idx.encode(inner));
        if (std::all_of(gv.begin(), gv.end(), [&](const auto& s) { return alg.field().is_zero(s); })) continue;
        out.set(t, alg.mul(f.evaluate(entries), gv));
    }
    return out;
}

/// Signature of a partial composition, so checkers can be pointed at a modified one.
template <ExactField F>
using Composition = std::function<Cochain<F>(const Cochain<F>&, const Cochain<F>&, std::size_t)>;

template <ExactField F>
Composition<F> standard_composition() {
    return [](const Cochain<F>& f, const Cochain<F>& g, std::size_t i) { return comp_i(f, g, i); };
}

/// f o g = sum_i (-1)^{(i-1)(m-1)} f o_i g.
template <ExactField F>
Cochain<F> circ(const Cochain<F>& f, const Cochain<F>& g, const Composition<F>& comp = standard_composition<F>()) {
    const std::size_t n = arity(f), m = arity(g);
    auto out = Cochain<F>::s2(f.algebra_ptr(), static_cast<int>(n + m - 1));
    for (std::size_t i = 1; i <= n; ++i) {
        auto term = comp(f, g, i);
        term.scale(sign_of(f.field(), static_cast<long long>((i - 1) * (m - 1))));
        out += term;
    }
    return out;
}

/// [f, g] = f o g - (-1)^{(n-1)(m-1)} g o f.
template <ExactField F>
Cochain<F> bracket(const Cochain<F>& f, const Cochain<F>& g, const Composition<F>& comp = standard_composition<F>()) {
    auto fg = circ(f, g, comp);
    auto gf = circ(g, f, comp);
    gf.scale(sign_of(f.field(), shifted_degree(f) * shifted_degree(g)));
    return fg - gf;
}

/// Exponent of the sign of one admissible insertion pattern of a brace.
inline long long brace_sign_exponent(const std::vector<std::size_t>& slots, const std::vector<long long>& degrees,
                                     BraceSign convention) {
    long long e = 0, shift = 0;
    for (std::size_t p = 0; p < slots.size(); ++p) {
        const auto i = static_cast<long long>(slots[p]);
        switch (convention) {
            case BraceSign::slot_minus_one: e += degrees[p] * (i - 1); break;
            case BraceSign::slot: e += degrees[p] * i; break;
            case BraceSign::composite_slot: e += degrees[p] * (i + shift - 1); break;
        }
        shift += degrees[p];
    }
    return e;
}

/**
 * x{y_1, ..., y_k}: the signed sum over slots i_1 < ... < i_k of x of the
 * iterated insertion (...(x o_{i_1} y_1) o_{i_2 + |y_1|} y_2 ...).
 */
template <ExactField F>
Cochain<F> braces(const Cochain<F>& x, const std::vector<Cochain<F>>& args,
                  BraceSign convention = BraceSign::composite_slot, std::size_t cap = default_size_cap) {
    const std::size_t n = arity(x);
    const std::size_t k = args.size();
    if (k == 0) return x;
    if (k > 3) throw std::invalid_argument("braces support at most three arguments");
    if (k > n) throw std::invalid_argument("too many brace arguments for arity " + std::to_string(n));
    std::size_t result_arity = n;
    std::vector<long long> degrees;
    for (const auto& y : args) {
        result_arity += arity(y) - 1;
        degrees.push_back(shifted_degree(y));
    }
    auto out = Cochain<F>::s2(x.algebra_ptr(), static_cast<int>(result_arity), cap);

    std::vector<std::size_t> slots(k);
    for (std::size_t p = 0; p < k; ++p) slots[p] = p + 1;
    while (true) {
        Cochain<F> term = x;
        long long shift = 0;
        for (std::size_t p = 0; p < k; ++p) {
            term = comp_i(term, args[p], slots[p] + static_cast<std::size_t>(shift), cap);
            shift += degrees[p];
        }
        term.scale(sign_of(x.field(), brace_sign_exponent(slots, degrees, convention)));
        out += term;
        // next increasing tuple in 1..n
        std::size_t p = k;
        while (p > 0 && slots[p - 1] == n - (k - p)) --p;
        if (p == 0) break;
        ++slots[p - 1];
        for (std::size_t q = p; q < k; ++q) slots[q] = slots[q - 1] + 1;
    }
    return out;
}

/// Global sign of f cup g for arities n, m: (-1)^{|f|+1} times the brace sign of m{f, g}.
inline long long cup_sign_exponent(std::size_t n, std::size_t m, BraceSign convention = BraceSign::composite_slot) {
    return static_cast<long long>(n) +
           brace_sign_exponent({1, 2}, {static_cast<long long>(n) - 1, static_cast<long long>(m) - 1}, convention);
}

/// Nonzero entries (tensor index, value) of a cochain, in increasing tensor order.
template <ExactField F>
using SparseCochain = std::vector<std::pair<std::size_t, Vector<F>>>;

/**
 * The nonzero entries of f cup g on the triangle of size n+m:
 * sign * f(T_1^n) * g(T_{n+1}^m) * (product of all entries of R_{1,n+1}^{n,m}).
 * Rectangle digits are enumerated depth first and a branch is dropped as soon
 * as the partial product vanishes, so the full cochain space of degree n+m is
 * never walked. Throws SizeCapExceeded past max_entries entries.
 */
template <ExactField F>
SparseCochain<F> cup_support(const Cochain<F>& f, const Cochain<F>& g, BraceSign convention = BraceSign::composite_slot,
                             std::size_t max_entries = default_size_cap) {
    const std::size_t n = arity(f), m = arity(g);
    require_same_field(f.field(), g.field());
    const auto& alg = f.algebra();
    const F& field = alg.field();
    const std::size_t d = alg.dim();
    const std::size_t big = n + m;
    const std::size_t inputs = tri_size(big);
    checked_power(d, inputs, std::numeric_limits<std::size_t>::max());  // tensor indices must fit
    const auto sign = sign_of(field, cup_sign_exponent(n, m, convention));

    auto left = positions(TriSpec{1, n}, big);
    auto right = positions(TriSpec{n + 1, m}, big);
    auto rect = positions(RectSpec{1, n + 1, n, m}, big);
    std::vector<std::size_t> weight(inputs);
    for (std::size_t k = inputs, w = 1; k-- > 0; w *= d) weight[k] = w;

    // Offsets of every f-block and g-block digit pattern, paired with the block's value.
    auto block = [&](const Cochain<F>& h, const std::vector<std::size_t>& pos) {
        std::vector<std::pair<std::size_t, Vector<F>>> out;
        TensorIndexer hi(d, pos.size());
        std::vector<std::size_t> digits(pos.size());
        for (std::size_t t = 0; t < hi.count(); ++t) {
            auto v = h.value_vector(t);
            if (std::all_of(v.begin(), v.end(), [&](const auto& x) { return field.is_zero(x); })) continue;
            hi.decode(t, digits);
            std::size_t offset = 0;
            for (std::size_t k = 0; k < pos.size(); ++k) offset += digits[k] * weight[pos[k]];
            out.emplace_back(offset, std::move(v));
        }
        return out;
    };
    const auto fb = block(f, left);
    const auto gb = block(g, right);
    std::vector<std::pair<std::size_t, Vector<F>>> fg;
    for (const auto& [fo, fv] : fb)
        for (const auto& [go, gv] : gb) {
            auto v = alg.mul(fv, gv);
            for (auto& x : v) x = field.mul(sign, x);
            fg.emplace_back(fo + go, std::move(v));
        }

    SparseCochain<F> out;
    std::function<void(std::size_t, std::size_t, const SparseVector<F>&)> walk =
        [&](std::size_t k, std::size_t offset, const SparseVector<F>& coefficient) {
            if (k == rect.size()) {
                const auto c = alg.to_dense(coefficient);
                for (const auto& [o, v] : fg) {
                    auto value = alg.mul(v, c);
                    if (std::all_of(value.begin(), value.end(), [&](const auto& x) { return field.is_zero(x); })) continue;
                    if (out.size() == max_entries) throw SizeCapExceeded("cup product support exceeds the size cap");
                    out.emplace_back(offset + o, std::move(value));
                }
                return;
            }
            for (std::size_t digit = 0; digit < d; ++digit) {
                auto next = alg.mul_basis(coefficient, digit);
                if (!next.empty()) walk(k + 1, offset + digit * weight[rect[k]], next);
            }
        };
    if (!fg.empty()) walk(0, 0, alg.unit_sparse());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// f cup g as a full cochain of degree n+m.
template <ExactField F>
Cochain<F> cup(const Cochain<F>& f, const Cochain<F>& g, BraceSign convention = BraceSign::composite_slot,
               std::size_t cap = default_size_cap) {
    auto out = Cochain<F>::s2(f.algebra_ptr(), static_cast<int>(arity(f) + arity(g)), cap);
    for (const auto& [t, v] : cup_support(f, g, convention, cap)) out.set(t, v);
    return out;
}

/// (-1)^{|f|+1} m{f, g}, the definition the closed-form cup is tested against.
template <ExactField F>
Cochain<F> cup_via_braces(const Cochain<F>& f, const Cochain<F>& g, BraceSign convention = BraceSign::composite_slot) {
    auto m = multiplication<F>(f.algebra_ptr());
    auto out = braces(m, {f, g}, convention);
    out.scale(sign_of(f.field(), shifted_degree(f) + 1));
    return out;
}

/// d(f) = m o f - (-1)^{|f|} f o m.
template <ExactField F>
Cochain<F> d_operad(const Cochain<F>& f, const Composition<F>& comp = standard_composition<F>()) {
    auto m = multiplication<F>(f.algebra_ptr());
    auto right = circ(f, m, comp);
    right.scale(sign_of(f.field(), shifted_degree(f)));
    return circ(m, f, comp) - right;
}

// ---------------------------------------------------------------------------
// Verification suites

struct CheckResult {
    std::string name;
    std::size_t instances = 0;
    std::size_t skipped = 0;
    std::size_t failures = 0;
    std::vector<std::string> witnesses;

    bool passed() const { return failures == 0 && instances > 0; }

    void record(bool ok, const std::string& witness) {
        ++instances;
        if (ok) return;
        ++failures;
        if (witnesses.size() < 5) witnesses.push_back(witness);
    }
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::deque<CheckResult> checks;  // check() hands out references that must survive later insertions

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
    }
    CheckResult& check(const std::string& name) {
        for (auto& c : checks)
            if (c.name == name) return c;
        checks.emplace_back().name = name;
        return checks.back();
    }
};

/// Human-readable location of the first disagreement between two cochains.
template <ExactField F>
std::string difference_witness(const Cochain<F>& a, const Cochain<F>& b) {
    auto t = a.first_difference(b);
    if (t == a.tensors()) return "equal";
    std::ostringstream os;
    os << "first difference at basis tensor [";
    auto digits = a.indexer().decode(t);
    for (std::size_t k = 0; k < digits.size(); ++k) os << (k ? "," : "") << a.algebra().labels()[digits[k]];
    os << "]";
    return os.str();
}

/// Whether C^n of the algebra fits under the size cap.
template <ExactField F>
bool fits(const Algebra<F>& alg, std::size_t n, std::size_t cap) {
    try {
        checked_power(alg.dim(), s2_inputs(n) + 1, cap);
        return true;
    } catch (const SizeCapExceeded&) {
        return false;
    }
}

/**
 * Checks the operad axioms on seeded random cochains of arity <= max_arity:
 * both associativity laws for every admissible slot pair, and both unit laws.
 * Arity triples whose composite would exceed the size cap are redrawn.
 */
template <ExactField F>
VerificationReport verify_operad_axioms(const typename Cochain<F>::AlgebraPtr& alg, std::size_t max_arity,
                                        std::size_t trials, std::uint64_t seed,
                                        const Composition<F>& comp = standard_composition<F>(),
                                        std::size_t cap = default_size_cap) {
    VerificationReport report{"operad", seed, {}};
    std::mt19937_64 rng(seed);
    auto draw = [&](std::size_t lo) {
        return std::uniform_int_distribution<std::size_t>(lo, std::max(lo, max_arity))(rng);
    };
    auto draw_triple = [&](std::size_t lo) {
        for (;;) {
            std::size_t n = draw(lo), m = draw(1), p = draw(1);
            if (fits(*alg, n + m + p - 2, cap)) return std::array<std::size_t, 3>{n, m, p};
        }
    };
    auto unit = unit_element<F>(alg);
    auto& sequential = report.check("sequential composition");
    auto& nested = report.check("nested composition");
    auto& right_unit = report.check("right unit");
    auto& left_unit = report.check("left unit");
    auto tag = [](std::size_t trial, std::size_t n, std::size_t m, std::size_t p, std::size_t i, std::size_t j) {
        return "trial " + std::to_string(trial) + " arities (" + std::to_string(n) + "," + std::to_string(m) + "," +
               std::to_string(p) + ") i=" + std::to_string(i) + " j=" + std::to_string(j) + ": ";
    };

    for (std::size_t trial = 0; trial < trials; ++trial) {
        {
            auto [n, m, p] = draw_triple(2);
            auto x = random_s2_cochain<F>(alg, static_cast<int>(n), rng);
            auto y = random_s2_cochain<F>(alg, static_cast<int>(m), rng);
            auto z = random_s2_cochain<F>(alg, static_cast<int>(p), rng);
            for (std::size_t j = 2; j <= n; ++j)
                for (std::size_t i = 1; i < j; ++i) {
                    auto lhs = comp(comp(x, z, j), y, i);
                    auto rhs = comp(comp(x, y, i), z, m + j - 1);
                    sequential.record(lhs == rhs, tag(trial, n, m, p, i, j) + difference_witness(lhs, rhs));
                }
        }
        {
            auto [n, m, p] = draw_triple(1);
            auto x = random_s2_cochain<F>(alg, static_cast<int>(n), rng);
            auto y = random_s2_cochain<F>(alg, static_cast<int>(m), rng);
            auto z = random_s2_cochain<F>(alg, static_cast<int>(p), rng);
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t j = 1; j <= m; ++j) {
                    auto lhs = comp(comp(x, y, i), z, i + j - 1);
                    auto rhs = comp(x, comp(y, z, j), i);
                    nested.record(lhs == rhs, tag(trial, n, m, p, i, j) + difference_witness(lhs, rhs));
                }
            for (std::size_t i = 1; i <= n; ++i) {
                auto lhs = comp(x, unit, i);
                right_unit.record(lhs == x, tag(trial, n, 1, 0, i, 0) + difference_witness(lhs, x));
            }
            auto lhs = comp(unit, x, 1);
            left_unit.record(lhs == x, tag(trial, 1, n, 0, 1, 0) + difference_witness(lhs, x));
        }
    }
    return report;
}

/// Homotopy commutativity: x.y - (-1)^{(|x|+1)(|y|+1)} y.x = (-1)^{|x|} (d(x o y) - dx o y - (-1)^{|x|} x o dy).
template <ExactField F>
std::pair<Cochain<F>, Cochain<F>> commutativity_sides(const Cochain<F>& x, const Cochain<F>& y, BraceSign convention) {
    const F& field = x.field();
    const long long dx = shifted_degree(x), dy = shifted_degree(y);
    auto lhs = cup(x, y, convention) - sign_of(field, (dx + 1) * (dy + 1)) * cup(y, x, convention);
    auto rhs = d_operad(circ(x, y)) - circ(d_operad(x), y) - sign_of(field, dx) * circ(x, d_operad(y));
    rhs.scale(sign_of(field, dx));
    return {lhs, rhs};
}

/**
 * Homotopy Leibniz rule: [x, y.z] - [x,y].z - (-1)^{|x|(|y|+1)} y.[x,z]
 *   = (-1)^{|x|+|y|+1} (d(x{y,z}) - d(x){y,z} - (-1)^{|x|} x{dy,z} - (-1)^{|x|+|y|} x{y,dz}).
 */
template <ExactField F>
std::pair<Cochain<F>, Cochain<F>> leibniz_sides(const Cochain<F>& x, const Cochain<F>& y, const Cochain<F>& z,
                                                BraceSign convention) {
    const F& field = x.field();
    const long long dx = shifted_degree(x), dy = shifted_degree(y);
    auto lhs = bracket(x, cup(y, z, convention)) - cup(bracket(x, y), z, convention) -
               sign_of(field, dx * (dy + 1)) * cup(y, bracket(x, z), convention);
    auto rhs = d_operad(braces(x, {y, z}, convention)) - braces(d_operad(x), {y, z}, convention) -
               sign_of(field, dx) * braces(x, {d_operad(y), z}, convention) -
               sign_of(field, dx + dy) * braces(x, {y, d_operad(z)}, convention);
    rhs.scale(sign_of(field, dx + dy + 1));
    return {lhs, rhs};
}

/// Both homotopy identities on seeded random cochains of the given arities.
template <ExactField F>
VerificationReport verify_gv_identities(const typename Cochain<F>::AlgebraPtr& alg, std::array<std::size_t, 3> arities,
                                        std::size_t trials, std::uint64_t seed,
                                        BraceSign convention = BraceSign::composite_slot) {
    VerificationReport report{"gv", seed, {}};
    std::mt19937_64 rng(seed);
    auto& commutativity = report.check("homotopy graded commutativity");
    auto& leibniz = report.check("homotopy graded Leibniz");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto x = random_s2_cochain<F>(alg, static_cast<int>(arities[0]), rng);
        auto y = random_s2_cochain<F>(alg, static_cast<int>(arities[1]), rng);
        auto z = random_s2_cochain<F>(alg, static_cast<int>(arities[2]), rng);
        auto [gl, gr] = commutativity_sides(x, y, convention);
        commutativity.record(gl == gr, "trial " + std::to_string(trial) + ": " + difference_witness(gl, gr));
        if (arities[0] >= 2) {
            auto [jl, jr] = leibniz_sides(x, y, z, convention);
            leibniz.record(jl == jr, "trial " + std::to_string(trial) + ": " + difference_witness(jl, jr));
        } else {
            ++leibniz.skipped;
        }
    }
    return report;
}

/// (-1)^{|x||z|}[[x,y],z] + (-1)^{|y||x|}[[y,z],x] + (-1)^{|z||y|}[[z,x],y].
template <ExactField F>
Cochain<F> jacobiator(const Cochain<F>& x, const Cochain<F>& y, const Cochain<F>& z) {
    const F& field = x.field();
    const long long a = shifted_degree(x), b = shifted_degree(y), c = shifted_degree(z);
    return sign_of(field, a * c) * bracket(bracket(x, y), z) + sign_of(field, b * a) * bracket(bracket(y, z), x) +
           sign_of(field, c * b) * bracket(bracket(z, x), y);
}

}  // namespace hhs2
