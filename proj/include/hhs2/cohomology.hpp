/**
 * @file cohomology.hpp
 * @brief Cocycles, coboundaries and cohomology of the 2-sphere complex, and the
 * Gerstenhaber structure on it.
 *
 * A Complex caches the differential matrices and the coboundary column
 * spaces per degree; everything that would exceed the size cap is reported
 * as unavailable instead of being computed.
 */
#pragma once

#include "operad.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hhs2 {

class NotACocycle : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <ExactField F>
struct DegreeReport {
    std::size_t n = 0;
    std::optional<std::size_t> dim_c;
    std::optional<std::size_t> dim_z;
    std::optional<std::size_t> dim_b;
    std::optional<std::size_t> dim_h;
    std::vector<Cochain<F>> representatives;

    bool complete() const { return dim_c && dim_z && dim_b && dim_h; }
};

template <ExactField F>
struct CohomologyReport {
    std::string algebra;
    std::string field;
    std::size_t cap = default_size_cap;
    std::vector<DegreeReport<F>> degrees;

    bool complete() const {
        return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.complete(); });
    }
};

/// The cochain complex of one algebra with lazily built, cached differentials.
template <ExactField F>
class Complex {
public:
    using AlgebraPtr = typename Cochain<F>::AlgebraPtr;

    explicit Complex(AlgebraPtr alg, std::size_t cap = default_size_cap) : alg_(std::move(alg)), cap_(cap) {}

    const AlgebraPtr& algebra_ptr() const { return alg_; }
    const Algebra<F>& algebra() const { return *alg_; }
    std::size_t cap() const { return cap_; }

    bool fits(std::size_t n) const { return hhs2::fits(*alg_, n, cap_); }

    std::size_t dim_c(std::size_t n) const { return checked_power(alg_->dim(), s2_inputs(n) + 1, cap_); }

    /// delta_n : C^n -> C^{n+1}; throws SizeCapExceeded when either side is too large.
    const Matrix<F>& delta(std::size_t n) {
        auto it = deltas_.find(n);
        if (it == deltas_.end()) it = deltas_.emplace(n, delta_matrix(*alg_, n, cap_)).first;
        return it->second;
    }

    std::size_t rank_delta(std::size_t n) {
        auto it = ranks_.find(n);
        if (it == ranks_.end()) it = ranks_.emplace(n, rank(delta(n))).first;
        return it->second;
    }

    /// B^n, the image of delta_{n-1}, prepared for membership queries.
    const ColumnSpace<F>& coboundaries(std::size_t n) {
        if (n == 0) throw std::invalid_argument("B^0 is zero");
        auto it = images_.find(n);
        if (it == images_.end()) it = images_.emplace(n, ColumnSpace<F>(delta(n - 1))).first;
        return it->second;
    }

    bool is_cocycle(const Cochain<F>& f) const { return hhs2::delta(f, cap_).is_zero(); }

    /// Throws NotACocycle naming the first basis tensor where delta(f) is nonzero.
    void require_cocycle(const Cochain<F>& f, const std::string& what = "not a cocycle") const {
        auto df = hhs2::delta(f, cap_);
        if (df.is_zero()) return;
        auto zero = Cochain<F>::s2(alg_, df.degree(), cap_);
        throw NotACocycle(what + ": " + difference_witness(df, zero));
    }

    bool is_coboundary(const Cochain<F>& f) {
        const auto n = static_cast<std::size_t>(f.degree());
        if (n == 0) return f.is_zero();
        return coboundaries(n).contains(f.coords());
    }

    /// Basis of Z^n = ker delta_n, one vector per free column.
    const std::vector<Vector<F>>& cocycle_basis(std::size_t n) {
        auto it = kernels_.find(n);
        if (it == kernels_.end()) it = kernels_.emplace(n, kernel_basis(delta(n))).first;
        return it->second;
    }

    /// Cocycles whose classes form a basis of H^n: kernel vectors outside B^n, greedily in index order.
    const std::vector<Vector<F>>& representatives(std::size_t n) {
        auto it = reps_.find(n);
        if (it != reps_.end()) return it->second;
        const F& field = alg_->field();
        const auto& z = cocycle_basis(n);
        Echelon<F> ech(field, dim_c(n));
        if (n > 0) insert_columns(ech, delta(n - 1));
        std::vector<Vector<F>> reps;
        for (const auto& v : z)
            if (ech.insert(v)) reps.push_back(v);
        return reps_.emplace(n, std::move(reps)).first->second;
    }

    /// Coordinates of [f] in the basis given by representatives(n).
    Vector<F> class_coordinates(const Cochain<F>& f) {
        require_cocycle(f);
        const auto n = static_cast<std::size_t>(f.degree());
        const auto& reps = representatives(n);
        auto it = class_bases_.find(n);
        if (it == class_bases_.end()) {
            Echelon<F> ech(alg_->field(), dim_c(n), true);
            for (const auto& r : reps) ech.insert(r);
            if (n > 0) insert_columns(ech, delta(n - 1));
            it = class_bases_.emplace(n, std::move(ech)).first;
        }
        auto combo = it->second.express(f.coords());
        if (!combo) throw std::logic_error("cocycle outside Z^n: representatives and B^n do not span");
        return Vector<F>(combo->begin(), combo->begin() + static_cast<std::ptrdiff_t>(reps.size()));
    }

    Cochain<F> cochain(std::size_t n, Vector<F> coords) const {
        return Cochain<F>::from_coords(alg_, static_cast<int>(n), s2_inputs(n), std::move(coords));
    }

private:
    static void insert_columns(Echelon<F>& ech, const Matrix<F>& m) {
        auto t = m.transpose();
        for (std::size_t j = 0; j < t.rows(); ++j)
            if (!t.row(j).empty()) ech.insert(t.row(j));
    }

    AlgebraPtr alg_;
    std::size_t cap_;
    std::map<std::size_t, Matrix<F>> deltas_;
    std::map<std::size_t, std::size_t> ranks_;
    std::map<std::size_t, ColumnSpace<F>> images_;
    std::map<std::size_t, std::vector<Vector<F>>> kernels_;
    std::map<std::size_t, std::vector<Vector<F>>> reps_;
    std::map<std::size_t, Echelon<F>> class_bases_;
};

/**
 * Dimensions of C^n, Z^n, B^n, H^n for n = 0..n_max. A degree whose
 * differential does not fit under the cap keeps the values it could compute
 * and leaves the rest unset.
 */
template <ExactField F>
CohomologyReport<F> cohomology(Complex<F>& complex, std::size_t n_max, bool with_representatives = false) {
    const auto& alg = complex.algebra();
    CohomologyReport<F> report{alg.name(), alg.field().tag(), complex.cap(), {}};
    for (std::size_t n = 0; n <= n_max; ++n) {
        DegreeReport<F> d;
        d.n = n;
        try {
            d.dim_c = complex.dim_c(n);
        } catch (const SizeCapExceeded&) {
            report.degrees.push_back(std::move(d));
            continue;
        }
        try {
            d.dim_b = n == 0 ? 0 : complex.rank_delta(n - 1);
        } catch (const SizeCapExceeded&) {
        }
        try {
            d.dim_z = *d.dim_c - complex.rank_delta(n);
        } catch (const SizeCapExceeded&) {
        }
        if (d.dim_z && d.dim_b) {
            if (*d.dim_b > *d.dim_z) throw std::logic_error("B^n larger than Z^n: delta does not square to zero");
            d.dim_h = *d.dim_z - *d.dim_b;
            if (with_representatives) {
                for (const auto& v : complex.representatives(n)) d.representatives.push_back(complex.cochain(n, v));
                if (d.representatives.size() != *d.dim_h)
                    throw std::logic_error("representative count differs from dim H^n");
            }
        }
        report.degrees.push_back(std::move(d));
    }
    return report;
}

template <ExactField F>
CohomologyReport<F> cohomology(const typename Cochain<F>::AlgebraPtr& alg, std::size_t n_max,
                               std::size_t cap = default_size_cap) {
    Complex<F> complex(alg, cap);
    return cohomology(complex, n_max);
}

/// Class of f cup g; both arguments must be cocycles, and so must the product.
template <ExactField F>
Vector<F> cup_on_H(Complex<F>& complex, const Cochain<F>& f, const Cochain<F>& g) {
    complex.require_cocycle(f);
    complex.require_cocycle(g);
    auto p = cup(f, g, BraceSign::composite_slot, complex.cap());
    complex.require_cocycle(p, "product not a cocycle");
    return complex.class_coordinates(p);
}

template <ExactField F>
Vector<F> bracket_on_H(Complex<F>& complex, const Cochain<F>& f, const Cochain<F>& g) {
    complex.require_cocycle(f);
    complex.require_cocycle(g);
    auto p = bracket(f, g);
    complex.require_cocycle(p, "product not a cocycle");
    return complex.class_coordinates(p);
}

struct GAlgebraOptions {
    std::size_t max_degree = 3;
    /// Flips the sign exponent of the commutativity check; the suite must then fail.
    bool mutate_commutativity_sign = false;
};

/// Witness for two sparse cochains of degree n: the first tensor where they differ.
template <ExactField F>
std::string support_difference(const Algebra<F>& alg, std::size_t n, const SparseCochain<F>& a,
                               const SparseCochain<F>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    if (k == a.size() && k == b.size()) return "equal";
    std::size_t t = k == a.size() ? b[k].first : (k == b.size() ? a[k].first : std::min(a[k].first, b[k].first));
    auto digits = TensorIndexer(alg.dim(), s2_inputs(n)).decode(t);
    std::string s = "first difference at basis tensor [";
    for (std::size_t i = 0; i < digits.size(); ++i) s += (i ? "," : "") + alg.labels()[digits[i]];
    return s + "]";
}

/**
 * Checks the Gerstenhaber structure on random cocycles of degree <= max_degree:
 * (a) graded commutativity of cup modulo B, (b) graded Leibniz modulo B,
 * (c) graded Jacobi for the bracket and (d) associativity of cup, the last two
 * exactly. Associativity compares the sparse supports of both sides. Products are also checked to be cocycles whenever their
 * coboundary fits under the cap.
 * For each check the degrees are drawn from the combinations whose results fit
 * under the cap; a check with no such combination counts as skipped.
 */
template <ExactField F>
VerificationReport verify_g_algebra(Complex<F>& complex, std::size_t trials, std::uint64_t seed,
                                    GAlgebraOptions options = {}) {
    VerificationReport report{"galgebra", seed, {}};
    const auto& alg = complex.algebra();
    const F& field = alg.field();
    std::mt19937_64 rng(seed);

    auto& commutativity = report.check("graded commutativity modulo coboundaries");
    auto& leibniz = report.check("graded Leibniz modulo coboundaries");
    auto& jacobi = report.check("graded Jacobi");
    auto& associativity = report.check("cup associativity");
    auto& closure = report.check("products of cocycles are cocycles");

    std::vector<std::size_t> degrees;
    for (std::size_t n = 1; n <= options.max_degree; ++n) {
        try {
            if (!complex.cocycle_basis(n).empty()) degrees.push_back(n);
        } catch (const SizeCapExceeded&) {
        }
    }
    auto random_cocycle = [&](std::size_t n) {
        const auto& basis = complex.cocycle_basis(n);
        Vector<F> v(complex.dim_c(n), field.zero());
        for (const auto& b : basis) {
            auto c = field.random(rng);
            if (field.is_zero(c)) continue;
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!field.is_zero(b[k])) v[k] = field.add(v[k], field.mul(c, b[k]));
        }
        return complex.cochain(n, std::move(v));
    };
    // Every degree tuple of the given length whose result degree (sum - shift) fits.
    auto tuples = [&](std::size_t length, std::size_t shift) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> t(length, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == length) {
                std::size_t total = 0;
                for (auto n : t) total += n;
                if (complex.fits(total - shift)) out.push_back(t);
                return;
            }
            for (auto n : degrees) {
                t[k] = n;
                rec(k + 1);
            }
        };
        if (!degrees.empty()) rec(0);
        return out;
    };
    auto pick = [&](const std::vector<std::vector<std::size_t>>& options_list) {
        return options_list[std::uniform_int_distribution<std::size_t>(0, options_list.size() - 1)(rng)];
    };
    auto label = [](std::size_t trial, const std::vector<std::size_t>& ds) {
        std::string s = "trial " + std::to_string(trial) + " degrees (";
        for (std::size_t k = 0; k < ds.size(); ++k) s += (k ? "," : "") + std::to_string(ds[k]);
        return s + "): ";
    };
    // Cocycle check of a product; skipped (and counted) when delta of it would pass the cap.
    auto closed = [&](const Cochain<F>& p, const std::string& tag) {
        if (!complex.fits(static_cast<std::size_t>(p.degree()) + 1)) {
            ++closure.skipped;
            return true;
        }
        bool ok = complex.is_cocycle(p);
        closure.record(ok, tag + "degree " + std::to_string(p.degree()) + " product is not a cocycle");
        return ok;
    };
    auto in_b = [&](const Cochain<F>& c) { return c.is_zero() || complex.is_coboundary(c); };

    const auto pairs = tuples(2, 0);
    // Both sides are compared on their supports, so only the two inner products
    // need to fit; the result degree itself may exceed the cap.
    std::vector<std::vector<std::size_t>> triples_cup;
    for (auto a : degrees)
        for (auto b : degrees)
            for (auto c : degrees)
                if (complex.fits(a + b) && complex.fits(b + c)) triples_cup.push_back({a, b, c});
    const auto triples_leibniz = tuples(3, 1);
    const auto triples_jacobi = tuples(3, 2);

    for (std::size_t trial = 0; trial < trials; ++trial) {
        if (pairs.empty()) {
            ++commutativity.skipped;
        } else {
            auto ds = pick(pairs);
            auto x = random_cocycle(ds[0]), y = random_cocycle(ds[1]);
            auto xy = cup(x, y), yx = cup(y, x);
            long long e = static_cast<long long>(ds[0] * ds[1]) + (options.mutate_commutativity_sign ? 1 : 0);
            auto tag = label(trial, ds);
            if (closed(xy, tag) && closed(yx, tag))
                commutativity.record(in_b(xy - sign_of(field, e) * yx), tag + "commutator is not a coboundary");
        }
        if (triples_leibniz.empty()) {
            ++leibniz.skipped;
        } else {
            auto ds = pick(triples_leibniz);
            auto x = random_cocycle(ds[0]), y = random_cocycle(ds[1]), z = random_cocycle(ds[2]);
            const long long dx = static_cast<long long>(ds[0]) - 1, dy = static_cast<long long>(ds[1]) - 1;
            auto tag = label(trial, ds);
            auto yz = cup(y, z), xy = bracket(x, y), xz = bracket(x, z);
            auto lhs = bracket(x, yz) - cup(xy, z) - sign_of(field, dx * (dy + 1)) * cup(y, xz);
            if (closed(yz, tag) && closed(xy, tag) && closed(xz, tag))
                leibniz.record(in_b(lhs), tag + "Leibniz defect is not a coboundary");
        }
        if (triples_jacobi.empty()) {
            ++jacobi.skipped;
        } else {
            auto ds = pick(triples_jacobi);
            auto x = random_cocycle(ds[0]), y = random_cocycle(ds[1]), z = random_cocycle(ds[2]);
            auto j = jacobiator(x, y, z);
            jacobi.record(j.is_zero(), label(trial, ds) + difference_witness(j, Cochain<F>::s2(j.algebra_ptr(), j.degree())));
        }
        if (triples_cup.empty()) {
            ++associativity.skipped;
        } else {
            auto ds = pick(triples_cup);
            auto x = random_cocycle(ds[0]), y = random_cocycle(ds[1]), z = random_cocycle(ds[2]);
            try {
                auto lhs = cup_support(cup(x, y), z, BraceSign::composite_slot, complex.cap());
                auto rhs = cup_support(x, cup(y, z), BraceSign::composite_slot, complex.cap());
                associativity.record(lhs == rhs,
                                     label(trial, ds) + support_difference(alg, ds[0] + ds[1] + ds[2], lhs, rhs));
            } catch (const SizeCapExceeded&) {
                ++associativity.skipped;
            }
        }
    }
    return report;
}

}  // namespace hhs2
