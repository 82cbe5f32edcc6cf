// idnet: command-line front end for the identity/action network game.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idnet/actions.hpp"
#include "idnet/cascade.hpp"
#include "idnet/errors.hpp"
#include "idnet/identity_game.hpp"
#include "idnet/io.hpp"
#include "idnet/scenarios.hpp"
#include "idnet/welfare.hpp"

namespace fs = std::filesystem;
using namespace idnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct Options {
    std::string input;
    std::string output_dir;
    std::string method = "direct";
    std::string mode = "monotone";
    std::string format = "json,csv,dot";
    std::string c_schedule;
    std::string seed_set;
    std::string config;
    std::optional<double> c;
    std::uint64_t seed = 0;
    double tol = 1e-12;
    std::size_t max_iters = 1'000'000;
    std::size_t enumerate_limit = kDefaultEnumerateLimit;

    // scenario
    std::string kind = "path";
    std::size_t n = 3;
    std::size_t degree = 4;
    std::size_t clique_size = 5;
    std::string initial = "inherit-by-group";
    bool bridge = false;
    double homophily = 0.0;
};

class Run {
public:
    Run(std::string command, const Options& opt) : opt_(opt), start_(Clock::now()) {
        manifest_.command = std::move(command);
        manifest_.seed = opt.seed;
        out_dir_ = opt.output_dir;
        if (out_dir_.empty()) {
            const char* env = std::getenv("IDNET_OUTPUT_DIR");
            out_dir_ = env != nullptr ? env : ".";
        }
        std::stringstream ss(opt.format);
        for (std::string part; std::getline(ss, part, ',');) {
            if (part != "json" && part != "csv" && part != "dot") {
                throw InputError("unknown format '" + part + "' (expected json, csv, dot)");
            }
            formats_.insert(part);
        }
    }

    bool wants(const std::string& f) const { return formats_.contains(f); }

    void config(Json doc) { manifest_.config = std::move(doc); }

    void json(const std::string& name, const Json& doc) {
        write_json(out_dir_ / name, doc);
        manifest_.outputs.push_back(name);
    }

    void text(const std::string& name, const std::string& body) {
        write_text(out_dir_ / name, body);
        manifest_.outputs.push_back(name);
    }

    void finish() {
        manifest_.wall_clock_seconds =
            std::chrono::duration<double>(Clock::now() - start_).count();
        write_json(out_dir_ / "manifest.json", manifest_to_json(manifest_));
        std::cout << "wrote " << manifest_.outputs.size() << " file(s) to " << out_dir_.string()
                  << "\n";
    }

private:
    using Clock = std::chrono::steady_clock;
    const Options& opt_;
    Clock::time_point start_;
    RunManifest manifest_;
    fs::path out_dir_;
    std::set<std::string> formats_;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw InputError("cannot parse number '" + part + "'");
        }
    }
    return out;
}

Json base_config(const Options& opt) {
    return Json{{"input", opt.input}};
}

double resolve_c(const Options& opt, const Instance& inst) {
    if (opt.c) return *opt.c;
    return relative_cost(inst.model).c;
}

int cmd_validate(const Options& opt) {
    const Json doc = read_json_file(opt.input);
    const auto diag = validate_instance(doc);
    for (const auto& w : diag.warnings) std::cout << "warning: " << w << "\n";
    if (!diag.ok()) {
        for (const auto& e : diag.errors) std::cout << "error: " << e << "\n";
        return kExitInput;
    }
    const auto inst = instance_from_json(doc);
    const auto& net = inst.model.network;
    std::cout << "ok: n=" << net.size() << ", m_edges=" << net.edge_count() << ", "
              << (net.is_connected() ? "connected" : "disconnected (allowed)") << "\n";
    return kExitOk;
}

int cmd_solve(const Options& opt) {
    Run run("solve", opt);
    const auto inst = load_instance(opt.input);
    ActionProfile profile;
    if (opt.method == "direct") {
        profile = solve_actions(inst.model, inst.assignment);
    } else if (opt.method == "iterative") {
        const std::vector<double> x0(inst.model.network.size(), 0.0);
        profile = solve_actions_iterative(inst.model, inst.assignment, x0,
                                          {opt.tol, opt.max_iters});
    } else {
        throw InputError("unknown method '" + opt.method + "'");
    }
    auto cfg = base_config(opt);
    cfg["method"] = opt.method;
    if (opt.method == "iterative") {
        cfg["tol"] = opt.tol;
        cfg["max_iters"] = opt.max_iters;
    }
    run.config(cfg);
    const auto table = value_table(inst.model, inst.assignment, profile);
    if (run.wants("json")) {
        run.json("actions.json", profile_to_json(profile));
        run.json("values.json", value_table_to_json(inst, table));
    }
    if (run.wants("csv")) run.text("actions.csv", profile_to_csv(inst, profile));
    if (run.wants("dot")) {
        run.text("network.dot", network_to_dot(inst.model.network, inst.assignment,
                                               inst.model.identities, &profile.x));
    }
    run.finish();
    return kExitOk;
}

int cmd_cascade(const Options& opt) {
    Run run("cascade", opt);
    const auto inst = load_instance(opt.input);
    std::vector<double> schedule =
        opt.c_schedule.empty() ? std::vector<double>{resolve_c(opt, inst)} : parse_list(opt.c_schedule);
    CascadeMode mode;
    if (opt.mode == "monotone") {
        mode = CascadeMode::Monotone;
    } else if (opt.mode == "general") {
        mode = CascadeMode::General;
    } else {
        throw InputError("unknown mode '" + opt.mode + "'");
    }
    auto cfg = base_config(opt);
    cfg["c_schedule"] = schedule;
    cfg["mode"] = opt.mode;
    run.config(cfg);

    const auto& net = inst.model.network;
    const auto& ids = inst.model.identities;
    const auto trace = cascade(net, inst.assignment, schedule, mode);
    const auto& final = trace.final_assignment();
    const double final_c = schedule.back();

    Json summary{{"rounds", trace.rounds.size()},
                 {"switches", trace.switch_count()},
                 {"converged", trace.converged},
                 {"cycle_detected", trace.cycle_detected},
                 {"final_a_fraction", static_cast<double>(final.count(kIdentityA)) /
                                          static_cast<double>(final.size())},
                 {"stall_set", final.members(kIdentityB)}};
    if (final_c <= 0.0) {
        summary["blocking_set_within_initial_B"] =
            find_blocking_set(net, final_c, inst.assignment.members(kIdentityB));
        summary["full_diffusion_conditions"] =
            diffusion_report_to_json(full_diffusion_conditions(net, final_c));
        Json th = Json::array();
        for (const auto& t : thresholds(net, final_c)) {
            th.push_back({{"t", t.absolute},
                          {"q", t.fraction ? Json(*t.fraction) : Json(nullptr)},
                          {"unconditional", t.unconditional},
                          {"isolated", t.isolated}});
        }
        summary["thresholds"] = std::move(th);
    }

    if (run.wants("json")) {
        run.json("trace.json", trace_to_json(trace, ids));
        run.json("summary.json", summary);
    }
    if (run.wants("csv")) run.text("trace.csv", trace_to_csv(trace, ids));
    if (run.wants("dot")) {
        run.text("round_000.dot", network_to_dot(net, trace.initial, ids));
        for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
            char name[32];
            std::snprintf(name, sizeof name, "round_%03zu.dot", r + 1);
            run.text(name, network_to_dot(net, trace.rounds[r].snapshot, ids));
        }
    }
    std::cout << "rounds=" << trace.rounds.size() << " final_a_fraction="
              << format_double(summary["final_a_fraction"].get<double>()) << "\n";
    run.finish();
    return kExitOk;
}

int cmd_equilibria(const Options& opt) {
    Run run("equilibria", opt);
    const auto inst = load_instance(opt.input);
    const double c = resolve_c(opt, inst);
    auto cfg = base_config(opt);
    cfg["c"] = c;
    cfg["enumerate_limit"] = opt.enumerate_limit;
    run.config(cfg);
    const auto eqs = enumerate_equilibria(inst.model.network, c, opt.enumerate_limit);
    const auto& ids = inst.model.identities;
    Json list = Json::array();
    std::ostringstream csv;
    csv << "index,a_members,assignment\n";
    for (std::size_t k = 0; k < eqs.size(); ++k) {
        list.push_back({{"a_members", eqs[k].count(kIdentityA)},
                        {"assignment", assignment_labels(eqs[k], ids)}});
        csv << k << ',' << eqs[k].count(kIdentityA) << ',';
        for (NodeId i = 0; i < eqs[k].size(); ++i) csv << (i ? " " : "") << ids[eqs[k][i]].label;
        csv << '\n';
    }
    std::cout << eqs.size() << " equilibria\n";
    if (run.wants("json")) run.json("equilibria.json", Json{{"c", c}, {"equilibria", list}});
    if (run.wants("csv")) run.text("equilibria.csv", csv.str());
    run.finish();
    return kExitOk;
}

int cmd_blocking(const Options& opt) {
    Run run("blocking", opt);
    const auto inst = load_instance(opt.input);
    const double c = resolve_c(opt, inst);
    const auto& net = inst.model.network;
    std::vector<NodeId> seed;
    if (opt.seed_set.empty()) {
        for (NodeId i = 0; i < net.size(); ++i) seed.push_back(i);
    } else {
        for (double v : parse_list(opt.seed_set)) {
            if (v < 0 || v != static_cast<double>(static_cast<NodeId>(v))) {
                throw InputError("seed-set entries must be node indices");
            }
            seed.push_back(static_cast<NodeId>(v));
        }
    }
    auto cfg = base_config(opt);
    cfg["c"] = c;
    cfg["seed_set"] = seed;
    run.config(cfg);
    const auto set = find_blocking_set(net, c, seed);
    Json doc{{"c", c}, {"seed_set", seed}, {"blocking_set", set}};
    if (!set.empty()) {
        const auto view = link_difference(net, set);
        doc["k"] = view.link_difference;
    }
    std::cout << "blocking set size " << set.size() << "\n";
    if (run.wants("json")) run.json("blocking.json", doc);
    run.finish();
    return kExitOk;
}

int cmd_welfare(const Options& opt) {
    Run run("welfare", opt);
    const auto inst = load_instance(opt.input);
    run.config(base_config(opt));
    const auto rows = welfare_comparison(inst.model, inst.assignment);
    Json table = Json::object();
    for (const auto& row : rows) table[row.label] = welfare_to_json(row.report, inst.model.identities);
    if (run.wants("json")) run.json("welfare.json", table);
    if (run.wants("csv")) run.text("welfare.csv", welfare_comparison_to_csv(rows));
    run.finish();
    return kExitOk;
}

int cmd_scenario(const Options& opt) {
    Run run("scenario", opt);
    ScenarioConfig cfg;
    if (!opt.config.empty()) {
        cfg = scenario_config_from_json(read_json_file(opt.config));
    } else {
        cfg.kind = scenario_kind_from_string(opt.kind);
        cfg.n = opt.n;
        cfg.degree = opt.degree;
        cfg.clique_size = opt.clique_size;
        cfg.seed = opt.seed;
        cfg.initial = initial_rule_from_string(opt.initial);
        cfg.cafeteria_bridge = opt.bridge;
        cfg.homophily = opt.homophily;
    }
    Json manifest_cfg = scenario_config_to_json(cfg);
    if (opt.c) manifest_cfg["c"] = *opt.c;
    run.config(manifest_cfg);

    const auto scenario = generate(cfg);
    const Instance inst{scenario_model(scenario, cfg.parameters), scenario.assignment,
                        scenario.connectivity_relaxed};
    if (run.wants("json")) run.json("instance.json", instance_to_json(inst));
    if (run.wants("dot")) {
        run.text("instance.dot", network_to_dot(inst.model.network, inst.assignment,
                                                inst.model.identities));
    }

    if (cfg.kind == ScenarioKind::Cafeteria1 || cfg.kind == ScenarioKind::Cafeteria2) {
        const auto& net = inst.model.network;
        std::vector<double> grid = opt.c ? std::vector<double>{*opt.c} : policy_c_grid(cfg.degree);
        Json reports = Json::array();
        std::ostringstream csv;
        csv << "c,agrees,outcome\n";
        bool all_agree = true;
        for (double c : grid) {
            const auto r = policy_solution_check(net, inst.assignment, c, cfg.kind);
            reports.push_back(policy_report_to_json(r));
            const bool counted = cfg.kind == ScenarioKind::Cafeteria1 || !r.in_boundary_band;
            all_agree = all_agree && (r.agrees || !counted);
            csv << format_double(c) << ',' << (r.agrees ? "true" : "false") << ',';
            if (cfg.kind == ScenarioKind::Cafeteria1) {
                csv << (r.inherited_is_equilibrium ? "inherited-equilibrium" : "not-equilibrium");
            } else {
                csv << "a_fraction=" << format_double(r.final_a_fraction);
            }
            csv << '\n';
        }
        Json summary{{"kind", std::string(to_string(cfg.kind))},
                     {"d", cfg.degree},
                     {"all_agree", all_agree},
                     {"reports", std::move(reports)}};
        if (cfg.kind == ScenarioKind::Cafeteria1) {
            summary["equilibrium_region"] = "(-d, d]";
            summary["boundary_convention"] =
                "ties d_H - d_L = c choose H, so the upper end c = d is included";
        } else {
            summary["boundary_band"] = "-2 < c <= 2 (reported, not asserted)";
        }
        std::cout << "policy check " << (all_agree ? "agrees" : "DISAGREES") << "\n";
        if (run.wants("json")) run.json("policy.json", summary);
        if (run.wants("csv")) run.text("policy.csv", csv.str());
    }
    run.finish();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identity and action choice on networks: solver and simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--output-dir", opt.output_dir,
                        "Output directory (default: $IDNET_OUTPUT_DIR or .)");
        sub->add_option("--format", opt.format, "Comma list of json,csv,dot");
        sub->add_option("--seed", opt.seed, "Seed recorded in the manifest");
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "Instance JSON")->required()->check(CLI::ExistingFile);
    };

    auto* validate = app.add_subcommand("validate", "Check an instance file");
    add_input(validate);

    auto* solve = app.add_subcommand("solve", "Equilibrium actions, utilities and value table");
    add_input(solve);
    add_io(solve);
    solve->add_option("--method", opt.method, "direct or iterative");
    solve->add_option("--tol", opt.tol, "Iterative tolerance");
    solve->add_option("--max-iters", opt.max_iters, "Iterative iteration cap");

    auto* casc = app.add_subcommand("cascade", "Identity diffusion after changes in c");
    add_input(casc);
    add_io(casc);
    casc->add_option("--c-schedule", opt.c_schedule, "Comma list of c values");
    casc->add_option("--c", opt.c, "Single c value");
    casc->add_option("--mode", opt.mode, "monotone or general");

    auto* eq = app.add_subcommand("equilibria", "Enumerate identity equilibria");
    add_input(eq);
    add_io(eq);
    eq->add_option("--c", opt.c, "Relative cost c (default: from the instance)");
    eq->add_option("--enumerate-limit", opt.enumerate_limit, "Largest n to enumerate");

    auto* block = app.add_subcommand("blocking", "Maximal blocking set by peeling");
    add_input(block);
    add_io(block);
    block->add_option("--c", opt.c, "Relative cost c (default: from the instance)");
    block->add_option("--seed-set", opt.seed_set, "Comma list of nodes to peel from");

    auto* welf = app.add_subcommand("welfare", "Utilitarian welfare and total action");
    add_input(welf);
    add_io(welf);

    auto* scen = app.add_subcommand("scenario", "Generate an instance and run policy checks");
    add_io(scen);
    scen->add_option("--config", opt.config, "Scenario config JSON")->check(CLI::ExistingFile);
    scen->add_option("--kind", opt.kind, "Scenario kind");
    scen->add_option("--n", opt.n, "Number of individuals");
    scen->add_option("--d", opt.degree, "Degree for regular kinds");
    scen->add_option("--clique-size", opt.clique_size, "Clique size for two-cliques-bridge");
    scen->add_option("--initial", opt.initial, "inherit-by-group, all-A, all-B");
    scen->add_flag("--bridge", opt.bridge, "cafeteria-1: join the cafeterias by one edge");
    scen->add_option("--homophily", opt.homophily, "cafeteria-2 homophily in [0, 0.95]");
    scen->add_option("--c", opt.c, "Check a single c instead of the sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*validate) return cmd_validate(opt);
        if (*solve) return cmd_solve(opt);
        if (*casc) return cmd_cascade(opt);
        if (*eq) return cmd_equilibria(opt);
        if (*block) return cmd_blocking(opt);
        if (*welf) return cmd_welfare(opt);
        if (*scen) return cmd_scenario(opt);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
