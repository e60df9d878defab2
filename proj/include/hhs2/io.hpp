#pragma once

// Algebra ingestion and report serialization for the command-line tool.

#include "cohomology.hpp"
#include "deformation.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <memory>
#include <regex>
#include <sstream>
#include <string>

namespace hhs2 {

using Json = nlohmann::json;

inline constexpr const char* tool_version = "0.1.0";

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <ExactField F>
typename F::Scalar parse_scalar(const F& field, const Json& v) {
    if (v.is_number_integer()) return field.from_int(v.get<std::int64_t>());
    if (v.is_string()) {
        try {
            return field.parse(v.get<std::string>());
        } catch (const std::exception& e) {
            throw InputError("bad coefficient \"" + v.get<std::string>() + "\": " + e.what());
        }
    }
    throw InputError("coefficient must be an integer or an \"a/b\" string, got " + v.dump());
}

template <ExactField F>
Vector<F> parse_vector(const F& field, const Json& v, std::size_t dim, const std::string& what) {
    if (!v.is_array() || v.size() != dim)
        throw InputError(what + " must be an array of " + std::to_string(dim) + " coefficients");
    Vector<F> out;
    for (const auto& x : v) out.push_back(parse_scalar(field, x));
    return out;
}

/// {"dim": d, "unit": [...], "table": [[[...]]], "labels": [...]}; labels are optional.
template <ExactField F>
Algebra<F> algebra_from_json(const F& field, const Json& j, std::string name = "custom") {
    if (!j.is_object()) throw InputError("algebra spec must be a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
        throw InputError("algebra spec needs a positive integer \"dim\"");
    const auto d = j["dim"].get<std::size_t>();
    if (!j.contains("unit")) throw InputError("algebra spec needs \"unit\"");
    if (!j.contains("table") || !j["table"].is_array() || j["table"].size() != d)
        throw InputError("\"table\" must have " + std::to_string(d) + " rows");
    auto unit = parse_vector(field, j["unit"], d, "\"unit\"");
    typename Algebra<F>::Table table;
    for (std::size_t i = 0; i < d; ++i) {
        const auto& row = j["table"][i];
        if (!row.is_array() || row.size() != d)
            throw InputError("table row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
        table.emplace_back();
        for (std::size_t k = 0; k < d; ++k)
            table.back().push_back(
                parse_vector(field, row[k], d, "table[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw InputError("\"labels\" must be an array of strings");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) throw InputError("\"labels\" must be an array of strings");
            labels.push_back(l.get<std::string>());
        }
    }
    try {
        return make_algebra(field, d, std::move(unit), std::move(table), std::move(labels), std::move(name));
    } catch (const AlgebraError& e) {
        throw InputError(std::string("invalid algebra: ") + e.what());
    }
}

template <ExactField F>
Json algebra_to_json(const Algebra<F>& alg) {
    const F& field = alg.field();
    auto vec = [&](const Vector<F>& v) {
        Json out = Json::array();
        for (const auto& x : v) out.push_back(field.to_string(x));
        return out;
    };
    Json table = Json::array();
    for (const auto& row : alg.table()) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(vec(v));
        table.push_back(std::move(r));
    }
    return Json{{"dim", alg.dim()}, {"unit", vec(alg.unit())}, {"table", std::move(table)}, {"labels", alg.labels()}};
}

/// 64-bit FNV-1a of the canonical JSON form plus the field tag, as 16 hex digits.
template <ExactField F>
std::string algebra_hash(const Algebra<F>& alg) {
    const std::string text = alg.field().tag() + "\n" + algebra_to_json(alg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

/**
 * Named algebras "k", "dual", "trunc:m", "trunc2:m,n"; anything else is read
 * as a path to a JSON algebra spec.
 */
template <ExactField F>
std::shared_ptr<const Algebra<F>> load_algebra(const F& field, const std::string& source) {
    static const std::regex trunc(R"(trunc:(\d+))"), trunc2(R"(trunc2:(\d+),(\d+))");
    std::smatch m;
    auto number = [&](const std::string& s) {
        auto v = std::stoul(s);
        if (v == 0 || v > 16) throw InputError("truncation order out of range in \"" + source + "\"");
        return static_cast<std::size_t>(v);
    };
    auto wrap = [](Algebra<F> a) { return std::make_shared<const Algebra<F>>(std::move(a)); };
    if (source == "k") return wrap(ground_field(field));
    if (source == "dual") return wrap(dual_numbers(field));
    if (std::regex_match(source, m, trunc)) return wrap(truncated_poly(number(m[1]), field));
    if (std::regex_match(source, m, trunc2)) return wrap(truncated_poly2(number(m[1]), number(m[2]), field));
    std::ifstream in(source);
    if (!in) throw InputError("unknown algebra \"" + source + "\" (not a named algebra and not a readable file)");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw InputError("cannot parse " + source + ": " + e.what());
    }
    return wrap(algebra_from_json(field, j, source));
}

/// {"u1": [[...], ...]}: row i holds the coordinates of u1(e_i).
template <ExactField F>
Cochain<F> u1_from_json(const std::shared_ptr<const Algebra<F>>& alg, const Json& j) {
    if (!j.is_object() || !j.contains("u1") || !j["u1"].is_array() || j["u1"].size() != alg->dim())
        throw InputError("u1 file must be {\"u1\": [...]} with " + std::to_string(alg->dim()) + " rows");
    auto u = Cochain<F>::s2(alg, 2);
    for (std::size_t i = 0; i < alg->dim(); ++i)
        u.set(i, parse_vector(alg->field(), j["u1"][i], alg->dim(), "u1 row " + std::to_string(i)));
    return u;
}

struct ReportMeta {
    std::string command;
    std::string field;
    std::string algebra;
    std::string algebra_hash;
    std::uint64_t seed = 0;
    std::size_t cap = 0;
};

inline Json meta_json(const ReportMeta& m) {
    return Json{{"tool", "hhs2"},       {"version", tool_version},    {"command", m.command},
                {"field", m.field},     {"algebra", m.algebra},       {"algebra_hash", m.algebra_hash},
                {"seed", m.seed},       {"cap", m.cap}};
}

template <ExactField F>
Json scalars_json(const F& field, const Vector<F>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(field.to_string(x));
    return out;
}

inline Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

template <ExactField F>
Json cohomology_json(const CohomologyReport<F>& r) {
    Json degrees = Json::array();
    for (const auto& d : r.degrees)
        degrees.push_back(Json{{"n", d.n},
                               {"dimC", optional_json(d.dim_c)},
                               {"dimZ", optional_json(d.dim_z)},
                               {"dimB", optional_json(d.dim_b)},
                               {"dimH", optional_json(d.dim_h)}});
    return Json{{"degrees", std::move(degrees)}, {"complete", r.complete()}};
}

inline Json checks_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"suite", r.suite},
                              {"seed", r.seed},
                              {"name", c.name},
                              {"instances", c.instances},
                              {"skipped", c.skipped},
                              {"failures", c.failures},
                              {"passed", c.passed()},
                              {"witnesses", c.witnesses}});
    return checks;
}

template <ExactField F>
Json deformation_json(const DeformationRun<F>& run, const F& field) {
    Json steps = Json::array();
    for (const auto& s : run.steps)
        steps.push_back(Json{{"from_order", s.from_order},
                             {"obstruction_cocycle", s.obstruction_cocycle},
                             {"obstruction_class", scalars_json(field, s.obstruction_class)},
                             {"lift_found", s.lift_found},
                             {"order_reached", s.order_reached}});
    Json us = Json::array();
    for (const auto& u : run.state.u) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < run.state.algebra->dim(); ++i) rows.push_back(scalars_json(field, u.value_vector(i)));
        us.push_back(std::move(rows));
    }
    return Json{{"steps", std::move(steps)}, {"order_reached", run.state.verified}, {"complete", run.complete}, {"u", std::move(us)}};
}

namespace detail {

inline void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array()) {
        if (j.empty()) out << path << "\t[]\n";
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace detail

/// One "path<TAB>value" line per leaf, in key order.
inline std::string to_tsv(const Json& j) {
    std::ostringstream out;
    out << "key\tvalue\n";
    detail::flatten(j, "", out);
    return out.str();
}

}  // namespace hhs2
