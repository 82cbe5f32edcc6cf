#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "idnet/actions.hpp"
#include "idnet/cascade.hpp"
#include "idnet/network.hpp"
#include "idnet/scenarios.hpp"
#include "idnet/welfare.hpp"

namespace idnet {

using Json = nlohmann::json;

inline constexpr std::string_view kToolVersion = "1.0.0";

// A model plus the stage-1 profile it is evaluated at: the unit every
// command reads and writes.
struct Instance {
    Model model;
    IdentityAssignment assignment;
    bool allow_disconnected = false;
};

struct Diagnostics {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const noexcept { return errors.empty(); }
};

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Parses JSON text; syntax errors become InputError with line and column.
Json parse_json_text(std::string_view text);
Json read_json_file(const std::filesystem::path& path);

// Every invariant violation in a raw instance document, not just the first.
Diagnostics validate_instance(const Json& doc);
// Throws InputError listing all violations.
Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& instance);
Instance load_instance(const std::filesystem::path& path);

Json profile_to_json(const ActionProfile& profile);
// id, identity, d_i, d_iI, x, utility
std::string profile_to_csv(const Instance& instance, const ActionProfile& profile);
Json value_table_to_json(const Instance& instance, const Eigen::MatrixXd& table);
// Identities colour the nodes; labels carry x when a profile is given.
std::string network_to_dot(const Network& net, const IdentityAssignment& assign,
                           const IdentitySet& identities, const std::vector<double>* x = nullptr);

Json trace_to_json(const CascadeTrace& trace, const IdentitySet& identities);
// round, node, old_identity, new_identity
std::string trace_to_csv(const CascadeTrace& trace, const IdentitySet& identities);
Json diffusion_report_to_json(const DiffusionReport& report);

Json welfare_to_json(const WelfareReport& report, const IdentitySet& identities);
std::string welfare_comparison_to_csv(const std::vector<LabeledWelfare>& rows);

Json assignment_labels(const IdentityAssignment& assign, const IdentitySet& identities);

ScenarioConfig scenario_config_from_json(const Json& doc);
Json scenario_config_to_json(const ScenarioConfig& config);
Json policy_report_to_json(const PolicyReport& report);

struct RunManifest {
    std::string command;
    Json config;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    double wall_clock_seconds = 0.0;
};

Json manifest_to_json(const RunManifest& manifest);

// Writes text verbatim; JSON is dumped with two-space indent and a newline.
void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const Json& doc);

} // namespace idnet
