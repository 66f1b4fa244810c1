#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pdeiss/backstepping.hpp"
#include "pdeiss/bounds.hpp"
#include "pdeiss/trajectory.hpp"

namespace pdeiss::csvio {

/// Shortest round-trippable decimal (17 significant digits, '.' separator).
/// All artifact files use this format with LF line endings so repeated runs
/// are byte-identical.
std::string format_double(double v);

/// Columns t,lhs,rhs,margin plus a trailing summary line.
void write_bound_report_csv(const bounds::BoundReport& rep,
                            const std::filesystem::path& path);

/// Per-sample summary: t, l2, sup, boundary, forcing_sup, forcing_l2.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

/// Full nodal snapshots (one row per retained sample, at most max_rows rows).
void write_fields_csv(const Trajectory& traj, const std::filesystem::path& path,
                      std::size_t max_rows);

/// Triangular samples as rows x,y,value.
void write_kernel_csv(const backstepping::Kernel& k, const std::filesystem::path& path);

/// Two-column t-vs-lhs and t-vs-rhs plot data; returns the file names written.
std::vector<std::string> write_plot_pair(const bounds::BoundReport& rep,
                                         const std::filesystem::path& dir);

}  // namespace pdeiss::csvio
