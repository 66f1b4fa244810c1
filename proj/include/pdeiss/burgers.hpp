#pragma once

#include <string>
#include <vector>

#include "pdeiss/grid.hpp"
#include "pdeiss/signals.hpp"
#include "pdeiss/trajectory.hpp"

namespace pdeiss::burgers {

/// Coefficients of u_t - mu u_xx + nu u u_x = f. nu = 0 is accepted as the
/// degenerate heat limit for internal testing; the config layer rejects it.
struct BurgersParams {
    double mu = 1.0;
    double nu = 1.0;
};

void validate(const BurgersParams& p);

struct SimOptions {
    int output_stride = 1;
    double blowup_guard = 1e8;
    bool enforce_stability_limit = true;
};

struct CompatibilityCondition {
    std::string name;
    double residual = 0.0;
    bool pass = true;
};

struct CompatibilityReport {
    std::vector<CompatibilityCondition> conditions;
    bool all_pass = true;
    double tol = 0.0;
};

/// Evaluates the eight corner conditions
/// u0(0) = u0''(0) = u0(1) = u0''(1) = d(0) = d'(0) = f(0,0) = f(1,0) = 0
/// analytically per family. Report-only; never throws.
CompatibilityReport check_compatibility(const InitialConditionSpec& u0, const SignalSpec& d,
                                        const ForcingSpec& f, double tol = 1e-12);

/// One IMEX step: Crank-Nicolson diffusion (tridiagonal solve), explicit
/// conservative convection nu (u^2/2)_x by central differences, forcing by
/// the time trapezoid (f_now + f_next)/2. Dirichlet values are imposed
/// strongly: out[0] = 0, out[n-1] = d_next. Exceeding the per-step limit
/// dt <= 0.5 h / (nu (max|u| + |d_next| + 1)) throws StabilityError; values
/// beyond the blow-up guard throw DivergenceError.
ScalarField step(const ScalarField& state, const BurgersParams& params,
                 const ScalarField& f_now, const ScalarField& f_next, double d_next,
                 double dt, const Grid1D& grid, const SimOptions& opts = {});

/// Marches the full system from u0 with boundary d and forcing f; requires
/// the compatibility report to pass. Snapshots every output_stride steps
/// (histories accumulate every step regardless).
Trajectory simulate(const BurgersParams& params, const InitialConditionSpec& u0,
                    const SignalSpec& d, const ForcingSpec& f, double t_end, double dt,
                    const Grid1D& grid, const SimOptions& opts = {});

struct SplitTrajectories {
    Trajectory w;  // boundary-driven subsystem, zero initial data
    Trajectory v;  // homogeneous-boundary subsystem carrying u0
};

/// Splitting A: w_t - mu w_xx + nu w w_x = f with boundary d and w(.,0) = 0;
/// v_t - mu v_xx + nu v v_x + nu (w v)_x = 0 with zero boundary, v(.,0) = u0.
/// Both systems march in lockstep on the same step sequence; the coupling
/// term uses the current w explicitly.
SplitTrajectories simulate_splitting_a(const BurgersParams& params,
                                       const InitialConditionSpec& u0, const SignalSpec& d,
                                       const ForcingSpec& f, double t_end, double dt,
                                       const Grid1D& grid, const SimOptions& opts = {});

/// Splitting B: forcing moves to the v subsystem (w is unforced).
SplitTrajectories simulate_splitting_b(const BurgersParams& params,
                                       const InitialConditionSpec& u0, const SignalSpec& d,
                                       const ForcingSpec& f, double t_end, double dt,
                                       const Grid1D& grid, const SimOptions& opts = {});

}  // namespace pdeiss::burgers
