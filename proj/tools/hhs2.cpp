// hhs2: cohomology reports, identity verification and deformation runs from the command line.
//
// Exit codes: 0 success, 1 input or validation error, 2 partial result (size cap),
// 3 verification failure.

#include <hhs2/crosscheck.hpp>
#include <hhs2/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <variant>

namespace {

using namespace hhs2;

enum Exit : int { ok = 0, input_error = 1, partial = 2, verification_failure = 3 };

struct Config {
    std::string command;
    std::string algebra = "dual";
    std::string field = "101";
    std::size_t max_degree = 0;  // 0 picks a per-command default
    std::size_t trials = 25;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::size_t cap = default_size_cap;
    std::string out;
    std::string suite = "all";
    std::string u1 = "euler";
    std::size_t order = 5;
    bool mutate = false;
};

struct Outcome {
    Json report;
    int code = ok;
};

template <ExactField F>
Json header(const Config& cfg, const Algebra<F>& alg) {
    ReportMeta meta{cfg.command, alg.field().tag(), alg.name(), algebra_hash(alg), cfg.seed, cfg.cap};
    return meta_json(meta);
}

template <ExactField F>
Outcome cmd_cohomology(const Config& cfg, const std::shared_ptr<const Algebra<F>>& alg) {
    Complex<F> complex(alg, cfg.cap);
    auto r = cohomology(complex, cfg.max_degree ? cfg.max_degree : 4, false);
    Json j = header(cfg, *alg);
    j.update(cohomology_json(r));
    j["checks"] = Json::array();
    return {std::move(j), r.complete() ? ok : partial};
}

template <ExactField F>
Outcome cmd_verify(const Config& cfg, const std::shared_ptr<const Algebra<F>>& alg) {
    static const std::vector<std::string> suites{"operad", "gv", "galgebra", "crosscheck"};
    if (cfg.suite != "all" && std::find(suites.begin(), suites.end(), cfg.suite) == suites.end())
        throw InputError("unknown suite \"" + cfg.suite + "\"");
    auto wanted = [&](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };

    std::vector<VerificationReport> reports;
    if (wanted("operad")) {
        auto comp = standard_composition<F>();
        if (cfg.mutate)
            comp = [](const Cochain<F>& f, const Cochain<F>& g, std::size_t i) {
                auto c = comp_i(f, g, i);
                if (i == 1 && arity(g) > 1) c.scale(c.field().from_int(2));
                return c;
            };
        reports.push_back(verify_operad_axioms<F>(alg, cfg.max_degree ? cfg.max_degree : 3, cfg.trials, cfg.seed, comp,
                                                  cfg.cap));
    }
    if (wanted("gv"))
        reports.push_back(verify_gv_identities<F>(alg, {2, 2, 2}, cfg.trials, cfg.seed,
                                                  cfg.mutate ? BraceSign::slot_minus_one : BraceSign::composite_slot));
    if (wanted("galgebra")) {
        Complex<F> complex(alg, cfg.cap);
        GAlgebraOptions options;
        options.max_degree = cfg.max_degree ? cfg.max_degree : 3;
        options.mutate_commutativity_sign = cfg.mutate;
        reports.push_back(verify_g_algebra(complex, cfg.trials, cfg.seed, options));
    }
    if (wanted("crosscheck")) reports.push_back(verify_crosscheck<F>(alg, cfg.max_degree ? cfg.max_degree : 4, cfg.cap));

    Json j = header(cfg, *alg);
    j["suite"] = cfg.suite;
    j["mutated"] = cfg.mutate;
    j["degrees"] = Json::array();
    j["checks"] = Json::array();
    bool failed = false, empty = false;
    for (const auto& r : reports) {
        for (auto& c : checks_json(r)) j["checks"].push_back(std::move(c));
        for (const auto& c : r.checks) {
            failed |= c.failures > 0;
            empty |= c.instances == 0;
        }
    }
    j["passed"] = !failed && !empty;
    return {std::move(j), failed ? verification_failure : (empty ? partial : ok)};
}

template <ExactField F>
Outcome cmd_deform(const Config& cfg, const std::shared_ptr<const Algebra<F>>& alg) {
    Cochain<F> u1 = Cochain<F>::s2(alg, 2);
    if (cfg.u1 == "euler") {
        u1 = euler_derivation<F>(alg);
    } else if (cfg.u1 != "zero") {
        std::ifstream in(cfg.u1);
        if (!in) throw InputError("cannot read u1 file " + cfg.u1);
        Json spec;
        try {
            in >> spec;
        } catch (const Json::parse_error& e) {
            throw InputError("cannot parse " + cfg.u1 + ": " + e.what());
        }
        u1 = u1_from_json(alg, spec);
    }
    if (cfg.order == 0) throw InputError("--order must be at least 1");

    Complex<F> complex(alg, cfg.cap);
    auto run = run_deformation(complex, u1, cfg.order);

    // Independent re-check of the final state and of every obstruction.
    const std::size_t oracle = verify_truncated(run.state, run.state.order());
    bool all_cocycles = std::all_of(run.steps.begin(), run.steps.end(), [](const auto& s) { return s.obstruction_cocycle; });

    Json j = header(cfg, *alg);
    j["u1"] = cfg.u1;
    j["requested_order"] = cfg.order;
    j.update(deformation_json(run, alg->field()));
    j["oracle_order"] = oracle;
    j["obstructions_are_cocycles"] = all_cocycles;
    j["degrees"] = Json::array();
    j["checks"] = Json::array();
    const bool consistent = oracle == run.state.order() && all_cocycles;
    return {std::move(j), consistent ? ok : verification_failure};
}

template <ExactField F>
Outcome dispatch(const Config& cfg, const F& field) {
    auto alg = load_algebra(field, cfg.algebra);
    if (cfg.command == "cohomology") return cmd_cohomology(cfg, alg);
    if (cfg.command == "verify") return cmd_verify(cfg, alg);
    return cmd_deform(cfg, alg);
}

std::size_t cap_from_env() {
    const char* env = std::getenv("HHS2_CAP");
    if (!env || !*env) return default_size_cap;
    try {
        std::size_t pos = 0;
        auto v = std::stoull(env, &pos);
        if (pos != std::string(env).size() || v == 0) throw std::invalid_argument(env);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw InputError(std::string("HHS2_CAP must be a positive integer, got \"") + env + "\"");
    }
}

int run(const Config& cfg) {
    Outcome outcome;
    if (cfg.field == "Q") {
        outcome = dispatch(cfg, RationalField{});
    } else {
        std::uint32_t p = 0;
        try {
            std::size_t pos = 0;
            auto v = std::stoul(cfg.field, &pos);
            if (pos != cfg.field.size() || v > 0xFFFFFFFFul) throw std::invalid_argument(cfg.field);
            p = static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw InputError("--field must be a prime or Q, got \"" + cfg.field + "\"");
        }
        PrimeField field = [&] {
            try {
                return PrimeField(p);
            } catch (const std::exception& e) {
                throw InputError(std::string("--field: ") + e.what());
            }
        }();
        outcome = dispatch(cfg, field);
    }

    const std::string text = cfg.format == "tsv" ? to_tsv(outcome.report) : outcome.report.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) throw InputError("cannot write " + cfg.out);
        out << text;
    }
    return outcome.code;
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Higher Hochschild cohomology over the 2-sphere"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    std::optional<std::size_t> cap_flag;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--algebra", cfg.algebra, "k, dual, trunc:m, trunc2:m,n, or a JSON spec file")->capture_default_str();
        sub->add_option("--field", cfg.field, "prime p or Q")->capture_default_str();
        sub->add_option("--max-degree", cfg.max_degree, "largest degree (or arity) examined");
        sub->add_option("--trials", cfg.trials, "random trials per check")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--format", cfg.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
        sub->add_option("--cap", cap_flag, "max scalars per cochain space (default: HHS2_CAP or 2^20)");
        sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    };
    auto* coh = app.add_subcommand("cohomology", "dimensions of C, Z, B, H by degree");
    common(coh);
    auto* ver = app.add_subcommand("verify", "run identity suites");
    common(ver);
    ver->add_option("--suite", cfg.suite, "operad, gv, galgebra, crosscheck or all")->capture_default_str();
    ver->add_flag("--mutate", cfg.mutate, "deliberately break the checked structure; the suite must fail");
    auto* def = app.add_subcommand("deform", "lift u1 order by order");
    common(def);
    def->add_option("--u1", cfg.u1, "euler, zero, or a JSON file {\"u1\": [...]}")->capture_default_str();
    def->add_option("--order", cfg.order, "target order N")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        cfg.cap = cap_flag ? *cap_flag : cap_from_env();
        if (cfg.cap == 0) throw InputError("--cap must be positive");
        return run(cfg);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const DeformationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const AlgebraError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const SizeCapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return partial;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return verification_failure;
    }
}
