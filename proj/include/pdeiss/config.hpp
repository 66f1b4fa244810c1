#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pdeiss/backstepping.hpp"
#include "pdeiss/burgers.hpp"
#include "pdeiss/signals.hpp"

namespace pdeiss::harness {

enum class SystemKind {
    burgers,
    burgers_split_a,
    burgers_split_b,
    reaction_diffusion_closed_loop,
    reaction_diffusion_open_loop,
    target_split,
};

std::string to_string(SystemKind k);

/// One fully validated scenario. Produced by parse_config; defaults are
/// n_nodes = 401, dt = 2.5e-5, t_end = 2, output_stride = 1, eps = mu/2.
struct ScenarioConfig {
    SystemKind system = SystemKind::burgers;
    double mu = 0.0;
    double nu = 0.0;
    backstepping::CoefficientSpec a;  // reaction-diffusion systems only
    int n_nodes = 401;
    double dt = 2.5e-5;
    double t_end = 2.0;
    int output_stride = 1;
    InitialConditionSpec u0;
    SignalSpec d;
    ForcingSpec f;
    std::vector<std::string> checks;
    double eps = 0.0;
    std::uint64_t seed = 1;
    double tol_bounds = 1e-4;
    double tol_algebraic = 1e-10;

    burgers::BurgersParams burgers_params() const { return {mu, nu}; }
    backstepping::ReactionDiffusionParams rd_params() const { return {mu, a, nu}; }
};

/// Parses the flat `key = value` format ('#' comments, dotted section
/// prefixes, later duplicates win). Unknown keys, missing required keys and
/// invariant violations throw ConfigError naming the key and line.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config_file(const std::filesystem::path& path);

/// True when `check` may be requested for `system`.
bool check_applies(const std::string& check, SystemKind system);

}  // namespace pdeiss::harness
