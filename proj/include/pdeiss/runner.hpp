#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pdeiss/bounds.hpp"
#include "pdeiss/config.hpp"
#include "pdeiss/exec.hpp"

namespace pdeiss::harness {

struct RunCheckSummary {
    std::string name;
    double min_margin = 0.0;
    bool satisfied = false;
    double tol = 0.0;
    bool relative = false;
    std::optional<bounds::Admissibility> admissibility;
};

struct RunArtifacts {
    std::filesystem::path out_dir;
    std::vector<std::filesystem::path> trajectory_csvs;
    std::vector<std::filesystem::path> report_csvs;
    std::vector<RunCheckSummary> checks;
    bool pass = true;  // every requested check satisfied and admissible
};

/// Deterministic end-to-end run: compatibility checks -> (kernels if needed)
/// -> simulation -> requested evaluators -> serialized artifacts. Solver and
/// precondition failures propagate as exceptions; timing goes to the console
/// only, so output files are byte-stable across runs.
RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                          bool run_checks = true, bool quiet = false);

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    bool pass = false;
    std::string error;
    std::vector<RunCheckSummary> checks;
};

struct SweepResult {
    std::string param;
    std::vector<SweepRow> rows;  // sorted by parameter value
    bool all_pass = false;
    std::filesystem::path table_csv;
};

/// Independent runs of the base config with `param` overridden per value.
/// Rows may execute concurrently (each writes its own directory); per-row
/// errors are recorded and the sweep continues.
SweepResult sweep(const std::string& base_config_text, const std::string& param,
                  std::vector<double> values, const std::filesystem::path& out_dir,
                  bool quiet = false, Exec exec = Exec::parallel);

}  // namespace pdeiss::harness
