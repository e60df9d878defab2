#include <hhs2/simplicial.hpp>

#include <gtest/gtest.h>

#include <memory>
#include <random>

using namespace hhs2;

namespace {

using Fp = PrimeField;
using AlgPtr = std::shared_ptr<const Algebra<Fp>>;

// Classical Hochschild coboundary of f : A^{(x)n} -> A, written out term by term:
// a_1 f(a_2..a_{n+1}) + sum_i (-1)^i f(..a_i a_{i+1}..) + (-1)^{n+1} f(a_1..a_n) a_{n+1}.
Cochain<Fp> hochschild_oracle(const Cochain<Fp>& f) {
    const auto& alg = f.algebra();
    const auto& field = alg.field();
    const std::size_t n = f.inputs();
    Cochain<Fp> out(f.algebra_ptr(), static_cast<int>(n + 1), n + 1);
    TensorIndexer idx(alg.dim(), n + 1);
    for (std::size_t t = 0; t < idx.count(); ++t) {
        auto a = idx.decode(t);
        auto basis = [&](std::size_t k) { return alg.to_sparse(alg.basis(a[k])); };
        auto total = alg.zero();
        auto add = [&](const Vector<Fp>& v, bool negative) {
            for (std::size_t r = 0; r < v.size(); ++r)
                total[r] = negative ? field.sub(total[r], v[r]) : field.add(total[r], v[r]);
        };
        {
            std::vector<SparseVector<Fp>> args;
            for (std::size_t k = 1; k <= n; ++k) args.push_back(basis(k));
            add(alg.mul(alg.basis(a[0]), f.evaluate(args)), false);
        }
        for (std::size_t i = 1; i <= n; ++i) {
            std::vector<SparseVector<Fp>> args;
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == i) continue;
                args.push_back(k == i - 1 ? alg.basis_product(a[k], a[k + 1]) : basis(k));
            }
            add(f.evaluate(args), i % 2 == 1);
        }
        {
            std::vector<SparseVector<Fp>> args;
            for (std::size_t k = 0; k < n; ++k) args.push_back(basis(k));
            add(alg.mul(f.evaluate(args), alg.basis(a[n])), (n + 1) % 2 == 1);
        }
        out.set(t, total);
    }
    return out;
}

}  // namespace

TEST(PointedMap, ValidatesAndComposes) {
    EXPECT_THROW(PointedMap(2, 2, {1, 0}), std::invalid_argument);
    EXPECT_THROW(PointedMap(2, 2, {0, 2}), std::invalid_argument);
    EXPECT_THROW(PointedMap(3, 2, {0, 1}), std::invalid_argument);
    PointedMap f(3, 2, {0, 1, 1}), g(2, 4, {0, 3});
    EXPECT_EQ(compose(g, f), PointedMap(3, 4, {0, 3, 3}));
    EXPECT_THROW(compose(f, f), std::invalid_argument);
}

TEST(SphereModel, LevelSizes) {
    auto x = s2_model(7);
    for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(x.size(n), 1 + n * (n == 0 ? 0 : n - 1) / 2) << n;
    EXPECT_EQ(s2_elements(4).front(), (S2Simplex{0, 0, 2}));
    EXPECT_EQ(s2_elements(4).back(), (S2Simplex{2, 0, 0}));
}

TEST(SphereModel, FacesOfTheNondegenerateSimplex) {
    // Level 2 holds only the 2-simplex; all three faces collapse it to the basepoint.
    auto x = s2_model(3);
    for (std::size_t i = 0; i <= 2; ++i) EXPECT_EQ(x.face(2, i), PointedMap(2, 1, {0, 0}));
    // Level 3: (0,0,1), (0,1,0), (1,0,0). d_0 hits the a-slot when a>0.
    EXPECT_EQ(x.face(3, 0), PointedMap(4, 2, {0, 0, 0, 1}));
    EXPECT_EQ(x.face(3, 1), PointedMap(4, 2, {0, 0, 1, 1}));
    EXPECT_EQ(x.face(3, 3), PointedMap(4, 2, {0, 1, 0, 0}));
}

TEST(SphereModel, SimplicialIdentitiesHold) {
    EXPECT_EQ(s2_model(7).check_identities(), std::nullopt);
    EXPECT_EQ(s1_model(7).check_identities(), std::nullopt);
}

TEST(SphereModel, BrokenFaceIsReported) {
    auto x = s2_model(5);
    auto faces = std::vector<PointedMap>{};
    for (std::size_t i = 0; i <= 4; ++i) faces.push_back(x.face(4, i));
    std::swap(faces[1], faces[2]);
    x.set_faces(4, faces);
    auto violation = x.check_identities();
    ASSERT_TRUE(violation.has_value());
    EXPECT_NE(violation->find("level"), std::string::npos);
}

TEST(CircleModel, BoundaryIsTheClassicalHochschildCoboundary) {
    Fp f(101);
    auto alg = std::make_shared<const Algebra<Fp>>(truncated_poly(3, f));
    auto x = s1_model(5);
    std::mt19937_64 rng(17);
    for (std::size_t n = 0; n <= 4; ++n) {
        auto c = random_cochain<Fp>(alg, static_cast<int>(n), x.size(n) - 1, rng);
        auto expected = hochschild_oracle(c);
        auto got = apply_boundary(x, c, n);
        EXPECT_EQ(got, expected) << "degree " << n;
        auto m = boundary_matrix(x, *alg, n);
        EXPECT_EQ(m.apply(c.coords()), expected.coords());
    }
}

TEST(SphereModel, BoundarySquaresToZero) {
    Fp f(101);
    auto x = s2_model(6);
    std::mt19937_64 rng(23);
    for (auto alg : {std::make_shared<const Algebra<Fp>>(dual_numbers(f)),
                     std::make_shared<const Algebra<Fp>>(truncated_poly2(2, 2, f))}) {
        const std::size_t top = alg->dim() == 2 ? 5 : 4;
        for (std::size_t n = 0; n + 2 <= top; ++n) {
            auto c = random_cochain<Fp>(alg, static_cast<int>(n), x.size(n) - 1, rng);
            EXPECT_TRUE(apply_boundary(x, apply_boundary(x, c, n), n + 1).is_zero()) << alg->name() << " " << n;
        }
    }
}

TEST(Pullback, IdentityAndBasepointCollapse) {
    Fp f(101);
    auto alg = std::make_shared<const Algebra<Fp>>(truncated_poly(3, f));
    std::mt19937_64 rng(1);
    auto c = random_cochain<Fp>(alg, 2, 2, rng);
    EXPECT_EQ(pullback(PointedMap::identity(3), c), c);
    // Sending every input to the basepoint: (phi^* c)(a) = a * c().
    auto c0 = random_cochain<Fp>(alg, 0, 0, rng);
    auto p = pullback(PointedMap(2, 1, {0, 0}), c0);
    for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(p.value_vector(t), alg->mul(alg->basis(t), c0.value_vector(0)));
}
