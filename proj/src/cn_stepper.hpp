#pragma once

// Shared Crank-Nicolson stepper for u_t = mu u_xx - a(x) u + (explicit terms).
// Interior unknowns only; Dirichlet values are written by the caller's loop.

#include <cmath>
#include <span>
#include <vector>

#include "pdeiss/errors.hpp"
#include "pdeiss/grid.hpp"
#include "pdeiss/tridiagonal.hpp"

namespace pdeiss::detail {

class CnStepper {
public:
    CnStepper(const Grid1D& grid, double dt, double mu, std::vector<double> reaction)
        : grid_(grid),
          dt_(dt),
          r_(mu * dt / (grid.h * grid.h)),
          reaction_(std::move(reaction)),
          lower_(grid.size() - 2, -0.5 * r_),
          diag_(grid.size() - 2),
          upper_(grid.size() - 2, -0.5 * r_),
          rhs_(grid.size() - 2),
          ws_(grid.size() - 2) {
        for (std::size_t i = 0; i < diag_.size(); ++i) {
            diag_[i] = 1.0 + r_ + 0.5 * dt_ * reaction_[i + 1];
        }
    }

    /// out = next state; expl holds the explicit right-hand side at interior
    /// nodes (same indexing as the state). left/right are the new-time
    /// boundary values, imposed strongly.
    void step(std::span<const double> u, std::span<const double> expl, double left,
              double right, std::span<double> out) {
        const std::size_t n = grid_.size();
        const std::size_t m = n - 2;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double lap = u[i + 1] - 2.0 * u[i] + u[i - 1];
            rhs_[i - 1] = u[i] + 0.5 * r_ * lap - 0.5 * dt_ * reaction_[i] * u[i] +
                          dt_ * expl[i];
        }
        rhs_[0] += 0.5 * r_ * left;
        rhs_[m - 1] += 0.5 * r_ * right;
        ws_.solve(std::span<const double>(lower_.data(), m - 1),
                  std::span<const double>(diag_.data(), m),
                  std::span<const double>(upper_.data(), m - 1),
                  std::span<double>(rhs_.data(), m));
        out[0] = left;
        for (std::size_t i = 0; i < m; ++i) out[i + 1] = rhs_[i];
        out[n - 1] = right;
    }

private:
    Grid1D grid_;
    double dt_;
    double r_;
    std::vector<double> reaction_;  // a(x_i) for every node
    std::vector<double> lower_;
    std::vector<double> diag_;
    std::vector<double> upper_;
    std::vector<double> rhs_;
    TridiagonalWorkspace ws_;
};

inline void check_finite_or_throw(std::span<const double> u, double guard, double t) {
    for (double v : u) {
        if (!std::isfinite(v) || std::abs(v) > guard) {
            throw DivergenceError("solution exceeded the blow-up guard at t = " +
                                      std::to_string(t),
                                  t);
        }
    }
}

}  // namespace pdeiss::detail
