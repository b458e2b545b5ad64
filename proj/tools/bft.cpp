// bft: command-line front end. Every command prints one JSON document on stdout.
// Exit status: 0 for a computed verdict (infeasible included), 2 for bad input.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bft/agreement.hpp"
#include "bft/error.hpp"
#include "bft/feasibility.hpp"
#include "bft/implement.hpp"
#include "bft/json_io.hpp"
#include "bft/persuasion.hpp"
#include "bft/products.hpp"
#include "bft/reproduce.hpp"
#include "bft/trade.hpp"

namespace {

using bft::Error;
using bft::ErrorCode;
using bft::Rational;
using nlohmann::json;
namespace io = bft::io;

constexpr int kExitInputError = 2;

const std::vector<std::string> kCommands{"check",       "implement",    "unique", "dawid",
                                         "intervals",   "trade-eval",   "trade-search",
                                         "persuade",    "mps",          "product-bound",
                                         "gaussian",    "email",        "examples"};

// A path, "-" for stdin, or the JSON text itself.
json read_input(const std::string& source) {
    std::string text;
    if (source == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
        text = source;
    } else {
        std::ifstream in(source);
        if (!in) throw Error(ErrorCode::ParseError, "cannot read input file " + source);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return io::parse_document(text);
}

Rational parse_flag(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw Error(ErrorCode::SchemaError, std::string(flag) + ": " + e.what());
    }
}

std::vector<Rational> parse_list(const std::string& text, const char* flag) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_flag(item, flag));
    return out;
}

json rationals(const std::vector<Rational>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(io::to_json(x));
    return out;
}

json rationals(const std::set<Rational>& xs) { return rationals(std::vector<Rational>(xs.begin(), xs.end())); }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Output {
    bool csv = false;
};

void emit_csv(const std::vector<std::pair<std::string, const bft::JointBeliefDistribution*>>& parts) {
    io::write_csv_header(std::cout, parts.front().second->agents(), true);
    for (const auto& [label, dist] : parts) io::write_csv_rows(std::cout, *dist, label);
}

json verdict_json(const bft::FeasibilityVerdict& verdict) {
    if (const auto* ok = std::get_if<bft::Feasible>(&verdict)) {
        return {{"verdict", "feasible"}, {"prior", io::to_json(ok->pair.prior())}, {"implementation", io::to_json(ok->pair)}};
    }
    if (const auto* bad = std::get_if<bft::InfeasibleTrade>(&verdict)) {
        return {{"verdict", "infeasible"},
                {"reason", "trade"},
                {"certificate", io::to_json(bad->certificate)},
                {"profit", io::to_json(bad->profit)}};
    }
    const auto& m = std::get<bft::InfeasibleMartingale>(verdict);
    json out{{"verdict", "infeasible"}, {"reason", "martingale"}, {"means", rationals(m.means)}};
    if (m.requested_prior) out["prior"] = io::to_json(*m.requested_prior);
    return out;
}

io::DistributionInput read_distribution(const std::string& source, const std::string& prior_flag) {
    auto input = io::distribution_from_json(read_input(source));
    if (!prior_flag.empty()) input.prior = parse_flag(prior_flag, "--prior");
    return input;
}

int run_check(const std::string& source, const std::string& prior_flag, const Output& out) {
    const auto input = read_distribution(source, prior_flag);
    const auto verdict = bft::check_feasibility(input.dist, input.prior);
    if (out.csv) {
        std::vector<std::pair<std::string, const bft::JointBeliefDistribution*>> parts{{"P", &input.dist}};
        if (const auto* ok = std::get_if<bft::Feasible>(&verdict)) {
            parts.emplace_back("low", &ok->pair.low());
            parts.emplace_back("high", &ok->pair.high());
        }
        emit_csv(parts);
    } else {
        emit(verdict_json(verdict));
    }
    return 0;
}

int run_implement(const std::string& source, const std::string& prior_flag, const Output& out) {
    const auto input = read_distribution(source, prior_flag);
    const auto verdict = bft::check_feasibility(input.dist, input.prior);
    const auto* ok = std::get_if<bft::Feasible>(&verdict);
    if (ok == nullptr) {
        emit(verdict_json(verdict));
    } else if (out.csv) {
        emit_csv({{"low", &ok->pair.low()}, {"high", &ok->pair.high()}});
    } else {
        emit(io::to_json(ok->pair));
    }
    return 0;
}

int run_unique(const std::string& source, const std::string& prior_flag) {
    const auto input = read_distribution(source, prior_flag);
    const auto verdict = bft::check_feasibility(input.dist, input.prior);
    const auto* ok = std::get_if<bft::Feasible>(&verdict);
    if (ok == nullptr) {
        emit(verdict_json(verdict));
        return 0;
    }
    const auto ranges = bft::implementation_ranges(input.dist, ok->pair.prior());
    json rows = json::array();
    bool unique = true;
    for (std::size_t x = 0; x < ranges.size(); ++x) {
        const auto& atom = input.dist.atoms()[x];
        json point = json::array();
        for (std::size_t i = 0; i < atom.point.size(); ++i) point.push_back(io::to_json(atom.point[i]));
        rows.push_back({{"point", std::move(point)},
                        {"min", io::to_json(ranges[x].min)},
                        {"max", ranges[x].max ? io::to_json(*ranges[x].max) : json(nullptr)}});
        unique = unique && ranges[x].max && *ranges[x].max == ranges[x].min;
    }
    emit({{"unique", unique}, {"prior", io::to_json(ok->pair.prior())}, {"high_mass_ranges", std::move(rows)}});
    return 0;
}

std::size_t subset_scan_limit() {
    const char* env = std::getenv("BFT_MAX_SUBSET_SCAN");
    if (env == nullptr || *env == '\0') return bft::kDefaultMaxSubsetScan;
    try {
        std::size_t used = 0;
        const unsigned long value = std::stoul(env, &used);
        if (used != std::string(env).size() || value > 62) throw std::invalid_argument("range");
        return value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "BFT_MAX_SUBSET_SCAN must be an integer in [0,62]");
    }
}

json scan_json(const bft::ScanResult& r) {
    json out{{"events_examined", r.events_examined}};
    if (r.satisfied()) {
        out["verdict"] = "satisfied";
    } else {
        out["verdict"] = "violated";
        out["side"] = r.violation->side == bft::Inequality::Left ? "left" : "right";
        out["amount"] = io::to_json(r.violation->amount);
        out["A1"] = rationals(r.violation->events.first);
        out["A2"] = rationals(r.violation->events.second);
    }
    return out;
}

int run_dawid(const std::string& source) {
    const auto input = io::distribution_from_json(read_input(source));
    try {
        emit(scan_json(bft::dawid_check(input.dist, subset_scan_limit())));
    } catch (const bft::MartingaleViolation& e) {
        emit({{"verdict", "infeasible"}, {"reason", "martingale"}, {"means", rationals(e.means())}});
    }
    return 0;
}

int run_intervals(const std::string& source) {
    emit(scan_json(bft::interval_check(io::distribution_from_json(read_input(source)).dist)));
    return 0;
}

int run_trade_eval(const std::string& source, const std::string& scheme_source) {
    const auto input = io::distribution_from_json(read_input(source));
    const auto scheme = io::scheme_from_json(read_input(scheme_source));
    emit({{"profit", io::to_json(bft::evaluate_scheme(input.dist, scheme))}});
    return 0;
}

int run_trade_search(const std::string& source, const std::string& family, std::uint64_t limit) {
    const auto input = io::distribution_from_json(read_input(source));
    const auto result = family == "signed" ? bft::search_signed_indicator_schemes(input.dist, limit)
                                          : bft::search_indicator_schemes(input.dist, limit);
    emit({{"family", family}, {"best", io::to_json(result.best)}, {"profit", io::to_json(result.profit)},
          {"examined", result.examined}});
    return 0;
}

bft::IndirectUtility parse_objective(const std::string& spec, const std::string& table_source,
                                     const Rational& prior) {
    if (!table_source.empty()) {
        // {"0,1/2": "1", ...}: comma-separated coordinates as keys.
        const json table = read_input(table_source);
        if (!table.is_object()) throw Error(ErrorCode::SchemaError, "objective table must be an object");
        std::map<bft::BeliefPoint, Rational> values;
        for (const auto& [key, value] : table.items()) {
            std::string cleaned;
            for (char ch : key) {
                if (ch != '(' && ch != ')' && ch != ' ') cleaned.push_back(ch);
            }
            values[bft::BeliefPoint(parse_list(cleaned, "--table key"))] = io::rational_from_json(value, key);
        }
        return bft::IndirectUtility::table(std::move(values));
    }
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
    if (name == "polarization") {
        const Rational a = parse_flag(arg.empty() ? "2" : arg, "--objective");
        if (!a.is_integer() || a.sign() <= 0 || a > Rational(64)) {
            throw Error(ErrorCode::SchemaError, "polarization exponent must be a positive integer up to 64");
        }
        return bft::IndirectUtility::polarization(static_cast<unsigned>(a.to_double()));
    }
    if (name == "neg-covariance") {
        return bft::IndirectUtility::neg_covariance(arg.empty() ? prior : parse_flag(arg, "--objective"));
    }
    if (name == "constant") return bft::IndirectUtility::constant(parse_flag(arg.empty() ? "0" : arg, "--objective"));
    throw Error(ErrorCode::SchemaError, "unknown objective '" + spec +
                                            "' (polarization[:a], neg-covariance[:c], constant:c, or --table)");
}

int run_persuade(const std::string& prior_text, const std::string& grid_text, const std::string& step_text,
                 std::size_t agents, const std::string& objective, const std::string& table, const Output& out) {
    const Rational prior = parse_flag(prior_text, "--prior");
    std::optional<bft::BeliefGrid> grid;
    if (!grid_text.empty()) {
        grid = bft::BeliefGrid::shared(parse_list(grid_text, "--grid"), agents);
    } else {
        grid = bft::BeliefGrid::uniform(parse_flag(step_text.empty() ? "1/4" : step_text, "--step"), agents, {prior});
    }
    const auto v = parse_objective(objective, table, prior);
    const auto result = bft::persuade_grid(*grid, prior, v);
    if (out.csv) {
        emit_csv({{"P", &result.optimizer}, {"low", &result.pair.low()}, {"high", &result.pair.high()}});
    } else {
        emit({{"objective", v.name()},
              {"value", io::to_json(result.value)},
              {"optimizer", io::to_json(result.optimizer)},
              {"implementation", io::to_json(result.pair)},
              {"constraints", result.constraints},
              {"grid_points", grid->points().size()}});
    }
    return 0;
}

int run_mps(const std::string& source) {
    const auto nu = io::scalar_from_json(read_input(source));
    const auto report = bft::mps_uniform_check(nu);
    json out{{"verdict", report.satisfied ? "satisfied" : "violated"},
             {"witness", io::to_json(report.witness)},
             {"H", io::to_json(report.height)}};
    try {
        out["symmetric_product_feasible"] = bft::symmetric_product_feasible(nu);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotSymmetric) throw;
        out["symmetric_product_feasible"] = nullptr;
    }
    emit(out);
    return 0;
}

int run_product_bound(const std::string& source) {
    const auto bound = bft::product_infeasibility_bound(io::scalar_from_json(read_input(source)));
    if (!bound) {
        emit({{"bound", nullptr}, {"reason", "point mass"}});
    } else {
        emit({{"bound", {{"gap", io::to_json(bound->gap)}, {"k", bound->k.get_str()}, {"n", bound->n.get_str()}}}});
    }
    return 0;
}

int run_gaussian(double d) {
    const bool feasible = bft::gaussian_product_feasible({d});
    emit({{"d", d}, {"feasible", feasible}, {"threshold", bft::normal_quantile(0.75)}});
    return 0;
}

int run_email(const std::string& prior_text, std::size_t depth, const Output& out) {
    const auto e = bft::email_extreme_point({parse_flag(prior_text, "--prior"), depth});
    if (out.csv) {
        emit_csv({{"P", &e.dist}, {"low", &e.pair.low()}, {"high", &e.pair.high()}});
    } else {
        emit({{"distribution", io::to_json(e.dist)},
              {"implementation", io::to_json(e.pair)},
              {"t", rationals(e.t)},
              {"w", rationals(e.w)},
              {"identities_hold", bft::email_identities_hold(e)}});
    }
    return 0;
}

int run_examples() {
    json rows = json::array();
    bool all = true;
    for (const auto& r : bft::run_acceptance()) {
        rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all = all && r.passed;
    }
    emit({{"criteria", std::move(rows)}, {"all_passed", all}});
    return all ? 0 : 1;
}

int fail(ErrorCode code, const std::string& message) {
    emit({{"error", std::string(bft::to_string(code))}, {"message", message}});
    return kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc >= 2) {
        const std::string first = argv[1];
        if (!first.empty() && first.front() != '-' &&
            std::find(kCommands.begin(), kCommands.end(), first) == kCommands.end()) {
            return fail(ErrorCode::UnknownCommand, "unknown command '" + first + "'");
        }
    }

    CLI::App app{"Feasibility of joint posterior beliefs over a binary state"};
    app.require_subcommand(1);
    Output out;
    std::string input;
    std::string prior;
    std::string scheme;
    std::string family = "ternary";
    std::uint64_t limit = bft::kDefaultSearchLimit;
    std::string grid;
    std::string step;
    std::size_t agents = 2;
    std::string objective = "polarization:2";
    std::string table;
    double d = 0.0;
    std::size_t depth = 8;

    const auto with_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "distribution JSON: file path, '-' for stdin, or inline")->required();
    };

    auto* check = app.add_subcommand("check", "decide feasibility; witness or trading certificate");
    with_input(check);
    check->add_option("--prior", prior, "prior p (default: common agent mean)");
    check->add_flag("--csv", out.csv, "emit point,mass tables");

    auto* implement = app.add_subcommand("implement", "conditional distributions of a feasible P");
    with_input(implement);
    implement->add_option("--prior", prior, "prior p");
    implement->add_flag("--csv", out.csv, "emit point,mass tables");

    auto* unique = app.add_subcommand("unique", "whether the implementation is unique");
    with_input(unique);
    unique->add_option("--prior", prior, "prior p");

    auto* dawid = app.add_subcommand("dawid", "two-agent subset scan (limit via BFT_MAX_SUBSET_SCAN)");
    with_input(dawid);

    auto* intervals = app.add_subcommand("intervals", "two-agent inequalities on anchored intervals only");
    with_input(intervals);

    auto* trade_eval = app.add_subcommand("trade-eval", "mediator profit of a trading scheme");
    with_input(trade_eval);
    trade_eval->add_option("--scheme", scheme, "scheme JSON: file path or inline")->required();

    auto* trade_search = app.add_subcommand("trade-search", "exhaustive indicator-scheme search");
    with_input(trade_search);
    trade_search->add_option("--family", family, "ternary (-1/0/+1 per value) or signed (+-1 on a set)")
        ->check(CLI::IsMember({"ternary", "signed"}));
    trade_search->add_option("--limit", limit, "maximum number of schemes");

    auto* persuade = app.add_subcommand("persuade", "first-order persuasion on a belief grid");
    persuade->add_option("--prior", prior, "prior p")->required();
    persuade->add_option("--grid", grid, "comma-separated grid values shared by all agents");
    persuade->add_option("--step", step, "uniform grid step (default 1/4; the prior is added)");
    persuade->add_option("--agents", agents, "number of agents")->check(CLI::Range(1, 8));
    persuade->add_option("--objective", objective, "polarization[:a] | neg-covariance[:c] | constant:c");
    persuade->add_option("--table", table, "objective table JSON {\"x1,x2\": value}");
    persuade->add_flag("--csv", out.csv, "emit point,mass tables");

    auto* mps = app.add_subcommand("mps", "uniform mean-preserving-spread check of a scalar distribution");
    with_input(mps);

    auto* bound = app.add_subcommand("product-bound", "agent count beyond which the product is infeasible");
    with_input(bound);

    auto* gaussian = app.add_subcommand("gaussian", "feasibility of conditionally independent Gaussian signals");
    gaussian->add_option("--d", d, "signal separation d > 0")->required();

    auto* email = app.add_subcommand("email", "censored countable-support extreme point");
    email->add_option("--prior", prior, "prior p")->default_str("1/2");
    email->add_option("--depth", depth, "depth K >= 1")->check(CLI::Range(1, 200));
    email->add_flag("--csv", out.csv, "emit point,mass tables");

    auto* examples = app.add_subcommand("examples", "run every acceptance criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(ErrorCode::ParseError, e.what());
    }

    try {
        if (check->parsed()) return run_check(input, prior, out);
        if (implement->parsed()) return run_implement(input, prior, out);
        if (unique->parsed()) return run_unique(input, prior);
        if (dawid->parsed()) return run_dawid(input);
        if (intervals->parsed()) return run_intervals(input);
        if (trade_eval->parsed()) return run_trade_eval(input, scheme);
        if (trade_search->parsed()) return run_trade_search(input, family, limit);
        if (persuade->parsed()) return run_persuade(prior, grid, step, agents, objective, table, out);
        if (mps->parsed()) return run_mps(input);
        if (bound->parsed()) return run_product_bound(input);
        if (gaussian->parsed()) return run_gaussian(d);
        if (email->parsed()) return run_email(prior.empty() ? "1/2" : prior, depth, out);
        if (examples->parsed()) return run_examples();
    } catch (const Error& e) {
        return fail(e.code(), e.what());
    } catch (const json::exception& e) {
        return fail(ErrorCode::SchemaError, e.what());
    }
    return fail(ErrorCode::UnknownCommand, "no command given");
}
