#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdeiss/grid.hpp"

namespace pdeiss {

/// Time-ordered snapshots of one simulated field together with the
/// disturbance histories the bound evaluators consume:
///   boundary_history[j]     = d(times[j])
///   forcing_sup_history[j]  = max |f(x,s)| over the grid and s in [0, times[j]]
///   forcing_l2_history[j]   = int_0^{times[j]} ||f(.,s)||^2 ds (trapezoid in time)
/// The sup/L2 histories are accumulated at every solver step even when
/// snapshots are written at a stride, so they never under-sample.
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(const Grid1D& grid) : grid_(grid) {}

    void reserve(std::size_t samples);
    void append(double t, std::span<const double> field, double boundary,
                double forcing_sup, double forcing_l2);

    const Grid1D& grid() const { return grid_; }
    std::size_t samples() const { return times_.size(); }
    std::span<const double> field(std::size_t j) const;
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& boundary_history() const { return boundary_; }
    const std::vector<double>& forcing_sup_history() const { return forcing_sup_; }
    const std::vector<double>& forcing_l2_history() const { return forcing_l2_; }

    /// Enforces the type invariants (t_0 = 0, strictly increasing times,
    /// nondecreasing histories, finite fields); throws on violation.
    void validate() const;

private:
    Grid1D grid_;
    std::vector<double> times_;
    std::vector<double> boundary_;
    std::vector<double> forcing_sup_;
    std::vector<double> forcing_l2_;
    std::vector<double> data_;
};

}  // namespace pdeiss
