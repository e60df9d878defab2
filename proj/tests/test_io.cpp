#include <hhs2/io.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace hhs2;

namespace {

using Fp = PrimeField;

std::string write_temp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("hhs2_io_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(Io, NamedAlgebras) {
    Fp field(101);
    EXPECT_EQ(load_algebra(field, "k")->dim(), 1u);
    EXPECT_EQ(load_algebra(field, "dual")->dim(), 2u);
    EXPECT_EQ(load_algebra(field, "trunc:5")->dim(), 5u);
    auto t = load_algebra(field, "trunc2:2,3");
    EXPECT_EQ(t->dim(), 6u);
    EXPECT_EQ(t->name(), "trunc2:2,3");
    EXPECT_THROW(load_algebra(field, "trunc:0"), InputError);
    EXPECT_THROW(load_algebra(field, "trunc:x"), InputError);
    EXPECT_THROW(load_algebra(field, "/nonexistent/algebra.json"), InputError);
}

TEST(Io, JsonRoundTrip) {
    Fp field(101);
    auto dual = load_algebra(field, "trunc:3");
    auto j = algebra_to_json(*dual);
    auto back = algebra_from_json(field, j, "again");
    EXPECT_TRUE(back == *dual);
    EXPECT_EQ(back.labels(), dual->labels());
    EXPECT_EQ(algebra_hash(back), algebra_hash(*dual));
}

TEST(Io, RationalCoefficientsAreReducedModP) {
    // k x k with idempotent e = 2x, where x^2 = x/2.
    const std::string text = R"({"dim": 2, "unit": [1, 0], "table": [[[1, 0], [0, 1]], [[0, 1], [0, "1/2"]]]})";
    auto path = write_temp("half.json", text);
    auto p = load_algebra(Fp(101), path);
    EXPECT_EQ(p->table()[1][1][1], 51u);  // 1/2 = 51 mod 101
    auto q = load_algebra(RationalField{}, path);
    EXPECT_EQ(q->field().to_string(q->table()[1][1][1]), "1/2");
    EXPECT_EQ(p->labels()[1], "e1");
}

TEST(Io, ValidationMessages) {
    Fp field(101);
    auto expect_error = [&](const std::string& text, const std::string& fragment) {
        try {
            algebra_from_json(field, Json::parse(text));
            FAIL() << text;
        } catch (const InputError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_error(R"({"unit": [1]})", "\"dim\"");
    expect_error(R"({"dim": 1, "table": [[[1]]]})", "\"unit\"");
    expect_error(R"({"dim": 2, "unit": [1, 0], "table": [[[1, 0]]]})", "2 rows");
    expect_error(R"({"dim": 1, "unit": [1], "table": [[[true]]]})", "coefficient");
    expect_error(R"({"dim": 1, "unit": ["1/0"], "table": [[[1]]]})", "bad coefficient");
    expect_error(R"({"dim": 2, "unit": [1, 0], "table": [[[1, 0], [0, 1]], [[1, 0], [0, 0]]]})",
                 "not commutative");
}

TEST(Io, HashDependsOnFieldAndTable) {
    auto a = load_algebra(Fp(101), "dual");
    auto b = load_algebra(Fp(103), "dual");
    auto c = load_algebra(Fp(101), "trunc:3");
    EXPECT_EQ(algebra_hash(*a).size(), 16u);
    EXPECT_NE(algebra_hash(*a), algebra_hash(*b));
    EXPECT_NE(algebra_hash(*a), algebra_hash(*c));
    EXPECT_EQ(algebra_hash(*a), algebra_hash(*load_algebra(Fp(101), "trunc:2")));
}

TEST(Io, U1File) {
    auto alg = load_algebra(Fp(101), "dual");
    auto u = u1_from_json(alg, Json::parse(R"({"u1": [[0, 0], [0, 1]]})"));
    EXPECT_EQ(u, euler_derivation<Fp>(alg));
    EXPECT_THROW(u1_from_json(alg, Json::parse(R"({"u1": [[0, 0]]})")), InputError);
    EXPECT_THROW(u1_from_json(alg, Json::parse(R"({"v": []})")), InputError);
}

TEST(Io, TsvIsAFlatProjection) {
    Json j{{"b", {1, 2}}, {"a", {{"x", "s"}, {"y", nullptr}}}, {"c", Json::array()}};
    EXPECT_EQ(to_tsv(j), "key\tvalue\na.x\ts\na.y\tnull\nb[0]\t1\nb[1]\t2\nc\t[]\n");
}

TEST(Io, CohomologyReportShape) {
    auto alg = load_algebra(Fp(101), "trunc:3");
    auto r = cohomology<Fp>(alg, 2);
    auto j = cohomology_json(r);
    ASSERT_EQ(j["degrees"].size(), 3u);
    EXPECT_EQ(j["degrees"][2]["dimC"], 9);
    EXPECT_EQ(j["degrees"][2]["n"], 2);
    EXPECT_TRUE(j["complete"].get<bool>());
    auto partial = cohomology_json(cohomology<Fp>(alg, 6));
    EXPECT_TRUE(partial["degrees"][6]["dimC"].is_null());
    EXPECT_FALSE(partial["complete"].get<bool>());
}
