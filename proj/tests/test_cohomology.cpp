#include <hhs2/cohomology.hpp>

#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <set>

using namespace hhs2;

namespace {

using Fp = PrimeField;
using AlgPtr = std::shared_ptr<const Algebra<Fp>>;

AlgPtr share(Algebra<Fp> a) { return std::make_shared<const Algebra<Fp>>(std::move(a)); }

// Z^n and B^n over F_2 by enumerating every cochain of a tiny complex.
std::pair<std::size_t, std::size_t> brute_force_z_b(const AlgPtr& alg, std::size_t n) {
    auto count_c = [&](std::size_t k) { return std::size_t{1} << Cochain<Fp>::s2(alg, static_cast<int>(k)).dim(); };
    std::size_t z = 0;
    for (std::size_t code = 0; code < count_c(n); ++code) {
        auto f = Cochain<Fp>::s2(alg, static_cast<int>(n));
        Vector<Fp> v(f.dim());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = (code >> k) & 1;
        if (delta(Cochain<Fp>::from_coords(alg, static_cast<int>(n), s2_inputs(n), v)).is_zero()) ++z;
    }
    std::set<Vector<Fp>> images;
    if (n == 0) images.insert(Cochain<Fp>::s2(alg, 0).coords());
    else
        for (std::size_t code = 0; code < count_c(n - 1); ++code) {
            Vector<Fp> v(Cochain<Fp>::s2(alg, static_cast<int>(n - 1)).dim());
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = (code >> k) & 1;
            images.insert(delta(Cochain<Fp>::from_coords(alg, static_cast<int>(n - 1), s2_inputs(n - 1), v)).coords());
        }
    auto log2 = [](std::size_t x) {
        std::size_t r = 0;
        while (x > 1) {
            x >>= 1;
            ++r;
        }
        return r;
    };
    return {log2(z), log2(images.size())};
}

}  // namespace

TEST(Cohomology, GroundFieldIsConcentratedInDegreeZero) {
    for (std::uint32_t p : {2u, 101u}) {
        auto report = cohomology<Fp>(share(ground_field(Fp(p))), 6);
        ASSERT_TRUE(report.complete());
        EXPECT_EQ(*report.degrees[0].dim_h, 1u);
        for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(*report.degrees[n].dim_h, 0u) << n;
    }
}

TEST(Cohomology, LowDegreesOfShippedAlgebras) {
    Fp field(101);
    for (auto alg : {share(dual_numbers(field)), share(truncated_poly(3, field)), share(truncated_poly(4, field)),
                     share(truncated_poly2(2, 2, field))}) {
        auto report = cohomology<Fp>(alg, 2);
        EXPECT_EQ(*report.degrees[0].dim_h, alg->dim()) << alg->name();
        EXPECT_EQ(*report.degrees[1].dim_h, 0u) << alg->name();
        // delta_1 f (a) = a f(1) is injective, so B^2 is a copy of A.
        EXPECT_EQ(*report.degrees[2].dim_b, alg->dim()) << alg->name();
        EXPECT_EQ(*report.degrees[2].dim_c, alg->dim() * alg->dim());
    }
}

TEST(Cohomology, DimensionsMatchBruteForceOverF2) {
    auto alg = share(dual_numbers(Fp(2)));
    auto report = cohomology<Fp>(alg, 3);
    for (std::size_t n = 0; n <= 3; ++n) {
        auto [z, b] = brute_force_z_b(alg, n);
        EXPECT_EQ(*report.degrees[n].dim_z, z) << n;
        EXPECT_EQ(*report.degrees[n].dim_b, b) << n;
    }
}

TEST(Cohomology, RankNullityAcrossDegrees) {
    Fp field(101);
    auto alg = share(truncated_poly(3, field));
    auto report = cohomology<Fp>(alg, 4);
    for (std::size_t n = 0; n + 1 <= 4; ++n) {
        const auto& d = report.degrees[n];
        const auto& next = report.degrees[n + 1];
        EXPECT_EQ(*next.dim_b, *d.dim_c - *d.dim_z) << n;
        EXPECT_LE(*d.dim_b, *d.dim_z);
    }
}

TEST(Cohomology, CapLeavesPartialDegrees) {
    Fp field(101);
    auto report = cohomology<Fp>(share(truncated_poly(3, field)), 6);
    EXPECT_TRUE(report.degrees[4].complete());
    EXPECT_TRUE(report.degrees[5].dim_c.has_value());
    EXPECT_TRUE(report.degrees[5].dim_b.has_value());
    EXPECT_FALSE(report.degrees[5].dim_z.has_value());
    EXPECT_FALSE(report.degrees[6].dim_c.has_value());
    EXPECT_FALSE(report.complete());
}

TEST(Cohomology, DimensionsDoNotDependOnTheCharacteristic) {
    for (auto make : {+[](const Fp& f) { return dual_numbers(f); }, +[](const Fp& f) { return truncated_poly(3, f); }}) {
        auto a = cohomology<Fp>(share(make(Fp(101))), 4);
        auto b = cohomology<Fp>(share(make(Fp(103))), 4);
        for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(a.degrees[n].dim_h, b.degrees[n].dim_h) << n;
    }
}

TEST(Cohomology, RationalAndPrimeFieldsAgreeOnDualNumbers) {
    auto q = cohomology<RationalField>(std::make_shared<const Algebra<RationalField>>(dual_numbers(RationalField{})), 4);
    auto p = cohomology<Fp>(share(dual_numbers(Fp(101))), 4);
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(q.degrees[n].dim_h, p.degrees[n].dim_h) << n;
}

TEST(Cohomology, RepresentativesAndClassCoordinates) {
    Fp field(101);
    auto alg = share(dual_numbers(field));
    Complex<Fp> complex(alg);
    auto report = cohomology(complex, 3, true);
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto& reps = report.degrees[n].representatives;
        ASSERT_EQ(reps.size(), *report.degrees[n].dim_h);
        for (std::size_t k = 0; k < reps.size(); ++k) {
            EXPECT_TRUE(complex.is_cocycle(reps[k]));
            auto c = complex.class_coordinates(reps[k]);
            for (std::size_t l = 0; l < c.size(); ++l) EXPECT_EQ(c[l], l == k ? 1u : 0u);
        }
        if (reps.size() >= 2) {
            auto c = complex.class_coordinates(reps[0] + reps[1]);
            EXPECT_EQ(c[0], 1u);
            EXPECT_EQ(c[1], 1u);
        }
        auto b = delta(random_s2_cochain<Fp>(alg, static_cast<int>(n - 1), rng));
        auto c = complex.class_coordinates(b);
        EXPECT_TRUE(std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; }));
        EXPECT_TRUE(complex.is_coboundary(b));
    }
    auto not_cocycle = random_s2_cochain<Fp>(alg, 2, rng);
    try {
        complex.class_coordinates(not_cocycle);
        FAIL();
    } catch (const NotACocycle& e) {
        EXPECT_EQ(std::string(e.what()).rfind("not a cocycle: first difference at basis tensor [", 0), 0u) << e.what();
    }
}

TEST(Cohomology, IdentityMapIsATwoCocycle) {
    Fp field(101);
    for (auto alg : {share(dual_numbers(field)), share(truncated_poly(4, field)), share(truncated_poly2(2, 2, field))})
        EXPECT_TRUE(delta(multiplication<Fp>(alg)).is_zero()) << alg->name();
}

TEST(Cohomology, ProductsWithCoboundariesVanishInCohomology) {
    Fp field(101);
    auto alg = share(dual_numbers(field));
    Complex<Fp> complex(alg);
    std::mt19937_64 rng(4);
    auto z2 = complex.cochain(2, complex.cocycle_basis(2).back());
    auto b2 = delta(random_s2_cochain<Fp>(alg, 1, rng));
    for (const auto& c : {cup_on_H(complex, z2, b2), cup_on_H(complex, b2, z2), bracket_on_H(complex, z2, b2)})
        EXPECT_TRUE(std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; }));
    // bracket(f, f) = 0 for f of even shifted degree
    auto z3 = complex.cochain(3, complex.cocycle_basis(3).back());
    EXPECT_TRUE(bracket(z3, z3).is_zero());
}

TEST(GAlgebra, DualNumbers) {
    Fp field(101);
    Complex<Fp> complex(share(dual_numbers(field)));
    auto report = verify_g_algebra(complex, 6, 11);
    for (const auto& c : report.checks) {
        EXPECT_EQ(c.failures, 0u) << c.name << ": " << (c.witnesses.empty() ? "" : c.witnesses.front());
        EXPECT_GT(c.instances, 0u) << c.name;
    }
}

TEST(GAlgebra, TruncatedCubic) {
    Fp field(101);
    Complex<Fp> complex(share(truncated_poly(3, field)));
    auto report = verify_g_algebra(complex, 4, 12);
    for (const auto& c : report.checks) EXPECT_EQ(c.failures, 0u) << c.name;
}

TEST(GAlgebra, WrongCommutativitySignIsCaught) {
    // On k[x]/(x^3) the square of a degree-2 class can be nonzero, so a flipped sign is visible.
    Fp field(101);
    Complex<Fp> complex(share(truncated_poly(3, field)));
    GAlgebraOptions options;
    options.mutate_commutativity_sign = true;
    auto report = verify_g_algebra(complex, 6, 13, options);
    EXPECT_GT(report.check("graded commutativity modulo coboundaries").failures, 0u);
}
