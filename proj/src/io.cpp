#include "idnet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "idnet/errors.hpp"
#include "idnet/identity_game.hpp"

namespace idnet {

namespace fs = std::filesystem;

namespace {

const char* const kFillColors[] = {"lightblue", "salmon", "palegreen", "khaki", "plum", "lightgray"};

bool is_number(const Json& j) { return j.is_number(); }

bool is_index(const Json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

std::string at_index(const char* what, std::size_t k) {
    return std::string(what) + " at index " + std::to_string(k);
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty()) out += "; ";
        out += l;
    }
    return out;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < limit; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream os;
        os << "parse error at line " << line << ", column " << column << ": " << e.what();
        throw InputError(os.str());
    }
}

Json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

Diagnostics validate_instance(const Json& doc) {
    Diagnostics diag;
    auto& errors = diag.errors;
    if (!doc.is_object()) {
        errors.push_back("instance must be a JSON object");
        return diag;
    }

    std::size_t n = 0;
    bool have_n = false;
    if (!doc.contains("n") || !is_index(doc["n"])) {
        errors.push_back("field 'n' must be a non-negative integer");
    } else {
        n = doc["n"].get<std::size_t>();
        have_n = true;
    }

    std::vector<Edge> edges;
    bool edges_ok = true;
    if (!doc.contains("edges") || !doc["edges"].is_array()) {
        errors.push_back("field 'edges' must be an array of [i, j] pairs");
        edges_ok = false;
    } else {
        const auto& list = doc["edges"];
        for (std::size_t k = 0; k < list.size(); ++k) {
            const auto& e = list[k];
            if (!e.is_array() || e.size() != 2 || !is_index(e[0]) || !is_index(e[1])) {
                errors.push_back(at_index("malformed edge", k));
                edges_ok = false;
                continue;
            }
            const auto i = e[0].get<std::size_t>();
            const auto j = e[1].get<std::size_t>();
            if (i == j) {
                errors.push_back("self-loop at edge index " + std::to_string(k));
                edges_ok = false;
            } else if (have_n && (i >= n || j >= n)) {
                errors.push_back("endpoint out of range at edge index " + std::to_string(k));
                edges_ok = false;
            } else {
                edges.emplace_back(i, j);
            }
        }
    }

    std::vector<std::string> labels;
    if (!doc.contains("identities") || !doc["identities"].is_array()) {
        errors.push_back("field 'identities' must be an array");
    } else {
        const auto& list = doc["identities"];
        if (list.size() < 2) errors.push_back("at least two identities are required");
        std::set<std::string> seen;
        std::vector<IdentitySpec> specs;
        bool specs_ok = true;
        for (std::size_t k = 0; k < list.size(); ++k) {
            const auto& s = list[k];
            if (!s.is_object() || !s.contains("label") || !s["label"].is_string() ||
                !s.contains("mu") || !is_number(s["mu"]) || !s.contains("v") ||
                !is_number(s["v"])) {
                errors.push_back(at_index("identity needs string 'label' and numeric 'mu', 'v'", k));
                specs_ok = false;
                continue;
            }
            const auto label = s["label"].get<std::string>();
            const double mu = s["mu"].get<double>();
            const double v = s["v"].get<double>();
            if (label.empty()) errors.push_back(at_index("empty identity label", k));
            if (!seen.insert(label).second) errors.push_back("duplicate identity label '" + label + "'");
            if (v < 0.0) errors.push_back("prescribed action must be non-negative for '" + label + "'");
            labels.push_back(label);
            specs.push_back({label, mu, v});
        }
        if (specs_ok && specs.size() >= 2 && seen.size() == specs.size()) {
            bool v_ok = true;
            for (const auto& s : specs) v_ok = v_ok && s.prescribed_action >= 0.0 && !s.label.empty();
            if (v_ok) {
                for (auto& w : IdentitySet(specs).pairing_warnings()) diag.warnings.push_back(w);
            }
        }
    }

    for (const char* name : {"alpha", "beta", "gamma"}) {
        if (!doc.contains(name) || !is_number(doc[name])) {
            errors.push_back(std::string("field '") + name + "' must be a number");
        } else if (doc[name].get<double>() < 0.0) {
            errors.push_back(std::string(name) + " must be non-negative");
        }
    }

    if (!doc.contains("abilities") || !doc["abilities"].is_array()) {
        errors.push_back("field 'abilities' must be an array");
    } else {
        const auto& list = doc["abilities"];
        if (have_n && list.size() != n) {
            errors.push_back("abilities has length " + std::to_string(list.size()) +
                             ", expected n = " + std::to_string(n));
        }
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (!is_number(list[k])) {
                errors.push_back(at_index("ability must be a number", k));
            } else if (!(list[k].get<double>() > 0.0)) {
                errors.push_back(at_index("ability must be positive", k));
            }
        }
    }

    if (!doc.contains("assignment") || !doc["assignment"].is_array()) {
        errors.push_back("field 'assignment' must be an array of identity labels");
    } else {
        const auto& list = doc["assignment"];
        if (have_n && list.size() != n) {
            errors.push_back("assignment has length " + std::to_string(list.size()) +
                             ", expected n = " + std::to_string(n));
        }
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (!list[k].is_string()) {
                errors.push_back(at_index("assignment entry must be a label", k));
            } else if (!labels.empty() &&
                       std::find(labels.begin(), labels.end(), list[k].get<std::string>()) ==
                           labels.end()) {
                errors.push_back("unknown identity label '" + list[k].get<std::string>() +
                                 "' at assignment index " + std::to_string(k));
            }
        }
    }

    bool relaxed = false;
    if (doc.contains("allow_disconnected")) {
        if (!doc["allow_disconnected"].is_boolean()) {
            errors.push_back("field 'allow_disconnected' must be a boolean");
        } else {
            relaxed = doc["allow_disconnected"].get<bool>();
        }
    }
    if (have_n && edges_ok && !relaxed) {
        const Network net(n, edges, Connectivity::Relaxed);
        if (!net.is_connected()) errors.push_back("network is not connected");
    }
    return diag;
}

Instance instance_from_json(const Json& doc) {
    const auto diag = validate_instance(doc);
    if (!diag.ok()) throw InputError(join(diag.errors));

    const auto n = doc["n"].get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : doc["edges"]) edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    const bool relaxed = doc.value("allow_disconnected", false);
    std::vector<IdentitySpec> specs;
    for (const auto& s : doc["identities"]) {
        specs.push_back({s["label"].get<std::string>(), s["mu"].get<double>(), s["v"].get<double>()});
    }
    IdentitySet identities(std::move(specs));
    Population pop(doc["abilities"].get<std::vector<double>>(), doc["alpha"].get<double>(),
                   doc["beta"].get<double>(), doc["gamma"].get<double>());
    const auto labels = doc["assignment"].get<std::vector<std::string>>();
    auto assign = IdentityAssignment::from_labels(labels, identities);
    Instance inst{Model(Network(n, edges, relaxed ? Connectivity::Relaxed : Connectivity::Required),
                        std::move(identities), std::move(pop)),
                  std::move(assign), relaxed};
    return inst;
}

Json instance_to_json(const Instance& inst) {
    const auto& m = inst.model;
    Json doc;
    doc["n"] = m.network.size();
    Json edges = Json::array();
    for (auto [i, j] : m.network.edges()) edges.push_back({i, j});
    doc["edges"] = std::move(edges);
    Json ids = Json::array();
    for (const auto& s : m.identities.specs()) {
        ids.push_back({{"label", s.label}, {"mu", s.status}, {"v", s.prescribed_action}});
    }
    doc["identities"] = std::move(ids);
    doc["alpha"] = m.population.alpha();
    doc["beta"] = m.population.beta();
    doc["gamma"] = m.population.gamma();
    doc["abilities"] = m.population.abilities();
    doc["assignment"] = assignment_labels(inst.assignment, m.identities);
    if (inst.allow_disconnected) doc["allow_disconnected"] = true;
    return doc;
}

Instance load_instance(const fs::path& path) { return instance_from_json(read_json_file(path)); }

Json assignment_labels(const IdentityAssignment& assign, const IdentitySet& identities) {
    Json out = Json::array();
    for (IdentityId id : assign.ids()) out.push_back(identities[id].label);
    return out;
}

Json profile_to_json(const ActionProfile& p) {
    return Json{{"x", p.x}, {"xbar", p.xbar}, {"utility", p.utility}};
}

std::string profile_to_csv(const Instance& inst, const ActionProfile& p) {
    const auto& net = inst.model.network;
    std::ostringstream os;
    os << "id,identity,d_i,d_iI,x,utility\n";
    for (NodeId i = 0; i < net.size(); ++i) {
        const IdentityId id = inst.assignment[i];
        os << i << ',' << inst.model.identities[id].label << ',' << net.degree(i) << ','
           << typed_degree(net, inst.assignment, i, id) << ',' << format_double(p.x[i]) << ','
           << format_double(p.utility[i]) << '\n';
    }
    return os.str();
}

Json value_table_to_json(const Instance& inst, const Eigen::MatrixXd& table) {
    Json labels = Json::array();
    for (const auto& s : inst.model.identities.specs()) labels.push_back(s.label);
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < table.cols(); ++k) row.push_back(table(i, k));
        rows.push_back(std::move(row));
    }
    return Json{{"identities", std::move(labels)}, {"V", std::move(rows)}};
}

std::string network_to_dot(const Network& net, const IdentityAssignment& assign,
                           const IdentitySet& identities, const std::vector<double>* x) {
    std::ostringstream os;
    os << "graph identities {\n  node [style=filled];\n";
    for (NodeId i = 0; i < net.size(); ++i) {
        const IdentityId id = assign[i];
        os << "  " << i << " [fillcolor=" << kFillColors[id % std::size(kFillColors)]
           << ", label=\"" << i << ' ' << identities[id].label;
        if (x != nullptr) os << "\\nx=" << format_double((*x)[i]);
        os << "\"];\n";
    }
    for (auto [i, j] : net.edges()) os << "  " << i << " -- " << j << ";\n";
    os << "}\n";
    return os.str();
}

Json trace_to_json(const CascadeTrace& trace, const IdentitySet& identities) {
    Json rounds = Json::array();
    for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
        const auto& round = trace.rounds[r];
        rounds.push_back({{"round", r + 1},
                          {"stage", round.stage},
                          {"c", round.c},
                          {"sequential", round.sequential},
                          {"switchers", round.switchers},
                          {"assignment", assignment_labels(round.snapshot, identities)}});
    }
    return Json{{"mode", trace.mode == CascadeMode::Monotone ? "monotone" : "general"},
                {"c_schedule", trace.c_schedule},
                {"initial", assignment_labels(trace.initial, identities)},
                {"rounds", std::move(rounds)},
                {"converged", trace.converged},
                {"cycle_detected", trace.cycle_detected}};
}

std::string trace_to_csv(const CascadeTrace& trace, const IdentitySet& identities) {
    std::ostringstream os;
    os << "round,node,old_identity,new_identity\n";
    for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
        const auto& round = trace.rounds[r];
        for (NodeId i : round.switchers) {
            const IdentityId now = round.snapshot[i];
            const IdentityId before = now == kIdentityA ? kIdentityB : kIdentityA;
            os << r + 1 << ',' << i << ',' << identities[before].label << ','
               << identities[now].label << '\n';
        }
    }
    return os.str();
}

Json diffusion_report_to_json(const DiffusionReport& r) {
    return Json{{"c", r.c},
                {"necessary_min_degree", r.necessary_min_degree},
                {"necessary_no_blocking_set", r.necessary_no_blocking_set},
                {"sufficient_max_degree", r.sufficient_max_degree},
                {"blocking_set", r.blocking_set},
                {"switches_from_all_B", r.switches},
                {"rounds_from_all_B", r.rounds},
                {"full_diffusion_from_all_B", r.full_diffusion},
                {"stall_set_from_all_B", r.stall_set},
                {"consistent", r.consistent}};
}

Json welfare_to_json(const WelfareReport& r, const IdentitySet& identities) {
    Json parts = Json::object();
    for (const auto& part : r.by_identity) {
        parts[identities[part.identity].label] = {{"members", part.members},
                                                  {"total_utility", part.total_utility},
                                                  {"total_action", part.total_action}};
    }
    return Json{{"total_utility", r.total_utility},
                {"total_action", r.total_action},
                {"by_identity", std::move(parts)}};
}

std::string welfare_comparison_to_csv(const std::vector<LabeledWelfare>& rows) {
    std::ostringstream os;
    os << "assignment,total_utility,total_action,delta_utility_vs_input,delta_action_vs_input\n";
    for (const auto& row : rows) {
        const auto delta = compare(rows.front().report, row.report);
        os << row.label << ',' << format_double(row.report.total_utility) << ','
           << format_double(row.report.total_action) << ',' << format_double(delta.utility) << ','
           << format_double(delta.action) << '\n';
    }
    return os.str();
}

ScenarioConfig scenario_config_from_json(const Json& doc) {
    if (!doc.is_object()) throw InputError("scenario config must be a JSON object");
    ScenarioConfig cfg;
    try {
        cfg.kind = scenario_kind_from_string(doc.at("kind").get<std::string>());
        cfg.n = doc.value("n", cfg.n);
        cfg.degree = doc.value("d", cfg.degree);
        cfg.clique_size = doc.value("clique_size", cfg.clique_size);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.initial = initial_rule_from_string(doc.value("initial", std::string("inherit-by-group")));
        cfg.custom = doc.value("custom", cfg.custom);
        cfg.cafeteria_bridge = doc.value("cafeteria_bridge", cfg.cafeteria_bridge);
        cfg.homophily = doc.value("homophily", cfg.homophily);
        auto& p = cfg.parameters;
        if (doc.contains("parameters")) {
            const auto& q = doc["parameters"];
            p.ability = q.value("w", p.ability);
            p.alpha = q.value("alpha", p.alpha);
            p.beta = q.value("beta", p.beta);
            p.gamma = q.value("gamma", p.gamma);
            p.high.status = q.value("mu_high", p.high.status);
            p.high.prescribed_action = q.value("v_high", p.high.prescribed_action);
            p.low.status = q.value("mu_low", p.low.status);
            p.low.prescribed_action = q.value("v_low", p.low.prescribed_action);
        }
    } catch (const Json::exception& e) {
        throw InputError(std::string("bad scenario config: ") + e.what());
    }
    return cfg;
}

Json scenario_config_to_json(const ScenarioConfig& cfg) {
    const auto& p = cfg.parameters;
    Json doc{{"kind", std::string(to_string(cfg.kind))},
             {"n", cfg.n},
             {"d", cfg.degree},
             {"clique_size", cfg.clique_size},
             {"seed", cfg.seed},
             {"initial", std::string(to_string(cfg.initial))},
             {"cafeteria_bridge", cfg.cafeteria_bridge},
             {"homophily", cfg.homophily},
             {"parameters",
              {{"w", p.ability},
               {"alpha", p.alpha},
               {"beta", p.beta},
               {"gamma", p.gamma},
               {"mu_high", p.high.status},
               {"v_high", p.high.prescribed_action},
               {"mu_low", p.low.status},
               {"v_low", p.low.prescribed_action}}}};
    if (cfg.initial == InitialRule::Custom) doc["custom"] = cfg.custom;
    return doc;
}

Json policy_report_to_json(const PolicyReport& r) {
    Json doc{{"kind", std::string(to_string(r.kind))},
             {"c", r.c},
             {"d", r.degree},
             {"agrees", r.agrees}};
    if (r.kind == ScenarioKind::Cafeteria1) {
        doc["inherited_is_equilibrium"] = r.inherited_is_equilibrium;
        doc["predicted_equilibrium"] = r.predicted_equilibrium;
        doc["violators"] = r.violators;
        doc["predicted_region"] = "(-d, d]";
    } else {
        doc["final_a_fraction"] = r.final_a_fraction;
        doc["consensus"] = r.consensus ? Json(r.consensus == kIdentityA ? "A" : "B") : Json(nullptr);
        doc["predicted"] = r.predicted_identity == kIdentityA ? "A" : "B";
        doc["in_boundary_band"] = r.in_boundary_band;
        doc["rounds"] = r.rounds;
        doc["cycle_detected"] = r.cycle_detected;
    }
    return doc;
}

Json manifest_to_json(const RunManifest& m) {
    return Json{{"command", m.command},
                {"config", m.config},
                {"seed", m.seed},
                {"tool_version", std::string(kToolVersion)},
                {"outputs", m.outputs},
                {"wall_clock_seconds", finite_or_null(m.wall_clock_seconds)}};
}

void write_text(const fs::path& path, std::string_view text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

} // namespace idnet
