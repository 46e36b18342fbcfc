#pragma once

// Command-line front end. Every subcommand prints one self-describing report
// (schema_version + echoed config) and returns a process exit code:
//   0 success, 1 verification failure, 2 parse error, 3 resource cap,
//   4 range error, 5 side violation.

#include <waldgame/analysis.hpp>
#include <waldgame/embedding.hpp>
#include <waldgame/literals.hpp>
#include <waldgame/set_parser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace waldgame::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kParseError = 2,
    kResourceCap = 3,
    kRangeError = 4,
    kSideViolation = 5,
};

inline constexpr const char* kSchemaVersion = "1";

/// Rounds to 12 significant digits; the JSON writer then prints the shortest
/// form of the rounded double.
inline double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline Json limit_json(const LimitEstimate& e) {
    Json history = Json::array();
    for (const auto& h : e.history)
        history.push_back({{"n", h.level}, {"value", round12(to_double(h.value))}, {"exact", to_fraction_string(h.value)}});
    return Json{{"estimate", round12(e.estimate_value())},
                {"estimate_exact", to_fraction_string(e.estimate)},
                {"converged", e.converged},
                {"tolerance", round12(e.tolerance)},
                {"history", std::move(history)}};
}

/// Run configuration. Worker count is deliberately absent from the echoed
/// config: it never changes the output.
struct RunConfig {
    std::string command;
    std::string format = "json";
    unsigned workers = 1;

    std::string set_expr;
    std::string family;
    std::optional<std::int64_t> k;
    std::int64_t n0 = 64;
    std::int64_t n_max = std::int64_t{1} << 20;
    std::optional<double> tol;
    double iterated_tol = analysis::kIteratedTolerance;
    std::string target;
    std::string loading;
    std::int64_t truncation = 0;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string f1 = "x+1";
    std::string f2 = "-x-1";
    std::int64_t shift = 0;
    std::int64_t level = 1000;
    std::string p;
    std::string q;
};

namespace detail {

inline Json base_report(const RunConfig& c, Json config) {
    config["format"] = c.format;
    return Json{{"schema_version", kSchemaVersion}, {"command", c.command}, {"config", std::move(config)}};
}

inline measures::WindowFamily family_from(const RunConfig& c) {
    if (c.family == "sym") return measures::WindowFamily::symmetric();
    if (!c.k || *c.k < 1) throw std::invalid_argument("--k >= 1 is required for dk/mdk families");
    return c.family == "dk" ? measures::WindowFamily::dk(*c.k) : measures::WindowFamily::mirror_dk(*c.k);
}

inline int cmd_density(const RunConfig& c, Json& report) {
    const auto set = intsets::parse_set_expr(c.set_expr);
    const auto family = family_from(c);
    const double tol = c.tol.value_or(analysis::kDensityTolerance);
    Json config{{"set", set.to_string()}, {"family", c.family}};
    if (c.family != "sym") config["k"] = family.k();
    config["n0"] = c.n0;
    config["nmax"] = c.n_max;
    config["tol"] = round12(tol);
    report = base_report(c, std::move(config));
    const auto estimate = measures::density_limit(set, family, c.n0, c.n_max, tol, c.workers);
    const Json limit = limit_json(estimate);
    for (const auto& [key, value] : limit.items()) report[key] = value;
    if (auto hint = measures::limit_density_hint(set, family)) report["target_hint"] = to_fraction_string(*hint);
    return kSuccess;
}

inline int cmd_loading_target(const RunConfig& c, Json& report) {
    const Rational s = parse_rational(c.target);
    const double tol = c.tol.value_or(analysis::kDensityTolerance);
    report = base_report(c, Json{{"s", to_fraction_string(s)}, {"n0", c.n0}, {"nmax", c.n_max}, {"tol", round12(tol)}});
    const auto target = measures::loading_for_target(s);
    const Rational k1 = target.k + 1;
    const Rational limit = target.lambda * target.k / k1 + (1 - target.lambda) / k1;
    const auto achieved = measures::density_limit(intsets::IntSet::naturals(), target.loading, c.n0, c.n_max, tol, c.workers);
    const double error = std::fabs(achieved.estimate_value() - to_double(s));
    report["K"] = target.k;
    report["lambda"] = to_fraction_string(target.lambda);
    report["loading"] = target.loading.to_string();
    report["limit_exact"] = to_fraction_string(limit);
    report["identity_holds"] = limit == s;
    report["achieved"] = limit_json(achieved);
    report["achieved_error"] = round12(error);
    return kSuccess;
}

inline int cmd_value(const RunConfig& c, Json& report) {
    const auto loading = literals::parse_loading(c.loading);
    analysis::ValueOptions opt;
    opt.n0 = c.n0;
    opt.n_max = c.n_max;
    opt.tol = c.tol.value_or(analysis::kDensityTolerance);
    opt.iterated_tol = c.iterated_tol;
    opt.workers = c.workers;
    report = base_report(c, Json{{"loading", loading.to_string()},
                                 {"n0", c.n0},
                                 {"nmax", c.n_max},
                                 {"tol", round12(opt.tol)},
                                 {"iter_tol", round12(opt.iterated_tol)}});
    const auto value = analysis::full_game_value(loading, opt);
    report["value_estimate"] = round12(value.value.estimate_value());
    report["value_exact"] = to_fraction_string(value.value.estimate);
    if (auto hint = measures::limit_density_hint(intsets::IntSet::naturals(), loading))
        report["value_limit"] = to_fraction_string(2 * *hint - 1);
    report["density_N"] = limit_json(value.density_n);
    report["cross_check_orders"] = Json{{"inner_first_p1", limit_json(value.inner_first_p1)},
                                        {"inner_first_p2", limit_json(value.inner_first_p2)},
                                        {"tolerance", round12(value.cross_check_tolerance)},
                                        {"passed", value.cross_check_passed}};
    return value.cross_check_passed ? kSuccess : kVerificationFailed;
}

inline int cmd_asymmetry(const RunConfig& c, Json& report) {
    analysis::AsymmetryOptions opt;
    opt.n0 = c.n0;
    opt.n_max = c.n_max;
    opt.tol = c.tol.value_or(analysis::kIteratedTolerance);
    opt.workers = c.workers;
    report = base_report(c, Json{{"n0", c.n0}, {"nmax", c.n_max}, {"tol", round12(opt.tol)}});
    const auto result = analysis::asymmetry_experiment(opt);
    bool exact_zero = true;
    for (const auto& h : result.diagonal.history) exact_zero = exact_zero && h.value == 0;
    report["inner_first_p1"] = limit_json(result.inner_first_p1);
    report["inner_first_p2"] = limit_json(result.inner_first_p2);
    report["diagonal"] = limit_json(result.diagonal);
    report["diagonal"]["exact_zero_at_every_level"] = exact_zero;
    report["fubini_defect"] = round12(result.fubini_defect);
    return kSuccess;
}

inline int cmd_embed_check(const RunConfig& c, Json& report) {
    if (c.truncation < 1) throw std::invalid_argument("--N must be >= 1");
    games::GameEmbedding e = games::GameEmbedding::canonical();
    e.f1 = literals::parse_affine(c.f1);
    e.f2 = literals::parse_affine(c.f2);
    report = base_report(c, Json{{"N", c.truncation},
                                 {"trials", c.trials},
                                 {"seed", c.seed},
                                 {"f1", e.f1.to_string()},
                                 {"f2", e.f2.to_string()}});
    const auto r = games::verify_embedding(e, c.truncation, c.trials, c.seed, c.workers);
    report["passed"] = r.passed;
    report["pure_checks"] = r.pure_checks;
    report["injective"] = r.injective;
    report["bijective_on_truncation"] = r.bijective_on_truncation;
    report["mixed_trials"] = r.mixed_trials;
    Json counterexample = nullptr;
    if (r.pure_counterexample) {
        const auto& ce = *r.pure_counterexample;
        counterexample = Json{{"kind", "pure"},
                              {"s", ce.s},
                              {"t", ce.t},
                              {"source_payoff", ce.source_payoff},
                              {"target_payoff", ce.target_payoff ? Json(*ce.target_payoff) : Json(nullptr)},
                              {"reason", ce.reason}};
    } else if (r.mixed_counterexample) {
        const auto& ce = *r.mixed_counterexample;
        counterexample = Json{{"kind", "mixed"},
                              {"trial", ce.trial},
                              {"p", literals::to_literal(ce.p)},
                              {"q", literals::to_literal(ce.q)},
                              {"source_payoff", to_fraction_string(ce.source_payoff)},
                              {"target_payoff", ce.target_payoff ? Json(to_fraction_string(*ce.target_payoff)) : Json(nullptr)},
                              {"reason", ce.reason}};
    }
    report["counterexample"] = std::move(counterexample);
    return r.passed ? kSuccess : kVerificationFailed;
}

inline int cmd_invariance(const RunConfig& c, Json& report) {
    const auto set = intsets::parse_set_expr(c.set_expr);
    const auto loading = literals::parse_loading(c.loading);
    report = base_report(c, Json{{"set", set.to_string()}, {"shift", c.shift}, {"loading", loading.to_string()}, {"n", c.level}});
    if (c.level < 1) throw std::invalid_argument("--n must be >= 1");
    const Rational defect = measures::invariance_defect(loading, set, c.shift, c.level);
    const Rational bound = measures::invariance_bound(loading, c.shift, c.level);
    report["defect"] = round12(to_double(defect));
    report["defect_exact"] = to_fraction_string(defect);
    report["bound"] = round12(to_double(bound));
    report["bound_exact"] = to_fraction_string(bound);
    report["min_window"] = loading.min_window_cardinality(c.level);
    report["within_bound"] = defect <= bound;
    return defect <= bound ? kSuccess : kVerificationFailed;
}

inline int cmd_exploit(const RunConfig& c, Json& report) {
    if (c.p.empty() == c.q.empty()) throw std::invalid_argument("exploit takes exactly one of --q or --p");
    const bool against_q = !c.q.empty();
    const auto opponent = literals::parse_measure(against_q ? c.q : c.p);
    Json config;
    config[against_q ? "q" : "p"] = literals::to_literal(opponent);
    report = base_report(c, std::move(config));
    const auto br = games::exploit_best_response(opponent, against_q ? measures::Side::Player1 : measures::Side::Player2);
    report["responder"] = against_q ? "player1" : "player2";
    report["strategy"] = br.strategy;
    report["payoff"] = to_fraction_string(br.payoff);
    report["payoff_value"] = round12(to_double(br.payoff));
    return kSuccess;
}

inline int cmd_fubini(const RunConfig& c, Json& report) {
    const auto p = literals::parse_measure(c.p);
    const auto q = literals::parse_measure(c.q);
    report = base_report(c, Json{{"p", literals::to_literal(p)}, {"q", literals::to_literal(q)}});
    if (p.min_point() < 1) throw measures::SupportOnWrongSide("--p must be supported on N");
    if (q.max_point() > -1) throw measures::SupportOnWrongSide("--q must be supported on -N");
    const auto orders = analysis::fubini_orders(games::OperationGame::wald(), p, q);
    report["payoff"] = to_fraction_string(orders.p_outer);
    report["payoff_value"] = round12(to_double(orders.p_outer));
    report["p_outer"] = to_fraction_string(orders.p_outer);
    report["q_outer"] = to_fraction_string(orders.q_outer);
    report["defect"] = to_fraction_string(orders.defect());
    return orders.defect() == 0 ? kSuccess : kVerificationFailed;
}

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
    if (v.is_object()) {
        for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, rows);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "." + std::to_string(i), rows);
    } else {
        rows.emplace_back(path, scalar_text(v));
    }
}

inline void collect_histories(const Json& v, const std::string& path, std::ostream& out, bool& any) {
    if (!v.is_object()) return;
    for (const auto& [key, child] : v.items()) {
        if (key == "history" && child.is_array()) {
            for (const auto& row : child) {
                out << (path.empty() ? "estimate" : path) << "," << row["n"].dump() << "," << row["value"].dump() << "\n";
                any = true;
            }
        } else if (key != "config") {
            collect_histories(child, path.empty() ? key : path + "." + key, out, any);
        }
    }
}

inline void write_report(const Json& report, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << report.dump(2) << "\n";
    } else if (format == "csv") {
        // History rows when the report has any, otherwise one key,value row per scalar.
        std::ostringstream rows;
        bool any = false;
        collect_histories(report, "", rows, any);
        if (any) {
            out << "series,n,value\n" << rows.str();
        } else {
            std::vector<std::pair<std::string, std::string>> flat;
            flatten(report, "", flat);
            out << "key,value\n";
            for (const auto& [k, v] : flat) out << k << "," << v << "\n";
        }
    } else {
        std::vector<std::pair<std::string, std::string>> flat;
        flatten(report, "", flat);
        std::size_t width = 0;
        for (const auto& row : flat) width = std::max(width, row.first.size());
        for (const auto& [k, v] : flat) out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
    }
}

}  // namespace detail

/// Parses `args` (without the program name), runs the chosen analysis and
/// writes the report to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finitely additive analysis of Wald's pick-the-bigger-integer game", "waldgame"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_common = [&c](CLI::App* sub) {
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_option("--workers", c.workers, "Worker threads; output does not depend on it")
            ->check(CLI::Range(1u, 256u));
    };
    auto add_levels = [&c](CLI::App* sub) {
        sub->add_option("--n0", c.n0, "First level of the doubling schedule")->check(CLI::PositiveNumber);
        sub->add_option("--nmax", c.n_max, "Largest level")->check(CLI::PositiveNumber);
        sub->add_option("--tol", c.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
    };

    auto* density = app.add_subcommand("density", "Window density of a set along a window family");
    density->add_option("--set", c.set_expr, "Set expression")->required();
    density->add_option("--family", c.family, "Window family")->required()->check(CLI::IsMember({"dk", "mdk", "sym"}));
    density->add_option("--k", c.k, "Family parameter K");
    add_levels(density);

    auto* target = app.add_subcommand("loading-target", "Loading whose mass on N is a prescribed s in (0,1)");
    target->add_option("--s", c.target, "Target as a/b")->required();
    add_levels(target);

    auto* value = app.add_subcommand("value", "Value 2l(N)-1 under a loading, cross-checked in both orders");
    value->add_option("--loading", c.loading, "Loading literal")->required();
    value->add_option("--iter-tol", c.iterated_tol, "Tolerance of the iterated cross-check")->check(CLI::PositiveNumber);
    add_levels(value);

    auto* asym = app.add_subcommand("asymmetry", "Order-of-integration experiment for the half-line Wald game");
    add_levels(asym);

    auto* embed = app.add_subcommand("embed-check", "Verify the Wald game embedding");
    embed->add_option("--N", c.truncation, "Truncation of pure strategies 0..N")->required();
    embed->add_option("--trials", c.trials, "Random mixed profiles")->check(CLI::NonNegativeNumber);
    embed->add_option("--seed", c.seed, "Seed for mixed profiles");
    embed->add_option("--f1", c.f1)->group("");
    embed->add_option("--f2", c.f2)->group("");

    auto* inv = app.add_subcommand("invariance", "Translation-invariance defect of a loading at one level");
    inv->add_option("--set", c.set_expr, "Set expression")->required();
    inv->add_option("--shift", c.shift, "Shift t")->required();
    inv->add_option("--loading", c.loading, "Loading literal")->required();
    inv->add_option("--n", c.level, "Level")->check(CLI::PositiveNumber);

    auto* exploit = app.add_subcommand("exploit", "Pure best response to a finite-support strategy");
    exploit->add_option("--q", c.q, "Player-2 measure on -N (player 1 responds)");
    exploit->add_option("--p", c.p, "Player-1 measure on N (player 2 responds)");

    auto* fubini = app.add_subcommand("fubini", "Both summation orders of a finite-support profile");
    fubini->add_option("--p", c.p, "Player-1 measure on N")->required();
    fubini->add_option("--q", c.q, "Player-2 measure on -N")->required();

    for (auto* sub : {density, target, value, asym, embed, inv, exploit, fubini}) add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }

    Json report;
    int code = kSuccess;
    try {
        c.command = app.get_subcommands().front()->get_name();
        if (c.command == "density") code = detail::cmd_density(c, report);
        else if (c.command == "loading-target") code = detail::cmd_loading_target(c, report);
        else if (c.command == "value") code = detail::cmd_value(c, report);
        else if (c.command == "asymmetry") code = detail::cmd_asymmetry(c, report);
        else if (c.command == "embed-check") code = detail::cmd_embed_check(c, report);
        else if (c.command == "invariance") code = detail::cmd_invariance(c, report);
        else if (c.command == "exploit") code = detail::cmd_exploit(c, report);
        else code = detail::cmd_fubini(c, report);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const intsets::WindowTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kResourceCap;
    } catch (const measures::TargetOutOfRange& e) {
        err << "error: " << e.what() << "\n";
        return kRangeError;
    } catch (const measures::SupportOnWrongSide& e) {
        err << "error: " << e.what() << "\n";
        return kSideViolation;
    } catch (const games::StrategyOutOfSet& e) {
        err << "error: " << e.what() << "\n";
        return kSideViolation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }
    detail::write_report(report, c.format, out);
    return code;
}

}  // namespace waldgame::cli
