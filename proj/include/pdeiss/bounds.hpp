#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdeiss/backstepping.hpp"
#include "pdeiss/burgers.hpp"
#include "pdeiss/exec.hpp"
#include "pdeiss/inequalities.hpp"
#include "pdeiss/signals.hpp"
#include "pdeiss/trajectory.hpp"

namespace pdeiss::bounds {

/// Smallness-condition record attached to a BoundReport.
struct Admissibility {
    std::string condition;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct BoundRecord {
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

/// Per-time lhs/rhs/margin trace of one named estimate. When `relative` is
/// set the margins are normalized by the rhs; `satisfied` always means
/// min_margin >= -tol.
struct BoundReport {
    std::string name;
    std::vector<BoundRecord> records;
    double min_margin = 0.0;
    bool satisfied = false;
    double tol = 0.0;
    bool relative = false;
    std::optional<Admissibility> admissibility;
};

inline constexpr double default_bound_tol = 1e-4;

/// sup|d| + (4 sqrt2 / mu) sup|f| < mu / nu over [0, horizon] (horizon may be
/// inf_order; sups are analytic per family, dense-sampled for the seeded ones).
Admissibility admissibility_theorem1(const SignalSpec& d, const ForcingSpec& f,
                                     const burgers::BurgersParams& p, double horizon);

/// sup|d| < mu / nu.
Admissibility admissibility_theorem2(const SignalSpec& d, const burgers::BurgersParams& p,
                                     double horizon);

/// ||u(.,t)||^2 <= 2||u0||^2 e^{-mu t} + 4 max_{s<=t}|d|^2
///               + (128/mu^2) max_{s<=t}|f|^2.
BoundReport evaluate_theorem1(const Trajectory& u, double u0_l2,
                              const burgers::BurgersParams& p,
                              double tol = default_bound_tol, Exec exec = Exec::parallel);

/// ||u(.,t)||^2 <= 2||u0||^2 e^{-(mu-eps)t} + 2 max|d|^2
///               + (2/eps) int_0^t ||f||^2 ds, for eps in (0, mu).
BoundReport evaluate_theorem2(const Trajectory& u, double u0_l2,
                              const burgers::BurgersParams& p, double eps,
                              double tol = default_bound_tol, Exec exec = Exec::parallel);

/// max_{x,s<=t} |w| <= max_{s<=t}|d| + (4 sqrt2 / mu) max_{s<=t}|f|; the
/// solution sup runs over interior nodes (boundary nodes carry the data d).
BoundReport evaluate_lemma4(const Trajectory& w, const burgers::BurgersParams& p,
                            double tol = default_bound_tol);

/// Unforced variant max|w| <= max|d| (the w subsystem of splitting B).
BoundReport evaluate_lemma6(const Trajectory& w, const burgers::BurgersParams& p,
                            double tol = default_bound_tol);

/// ||v(.,t)||^2 <= ||u0||^2 e^{-mu t}.
BoundReport evaluate_lemma5(const Trajectory& v, double u0_l2,
                            const burgers::BurgersParams& p,
                            double tol = default_bound_tol, Exec exec = Exec::parallel);

/// ||v(.,t)||^2 <= ||u0||^2 e^{-(mu-eps)t} + (1/eps) int_0^t ||f||^2 ds.
BoundReport evaluate_lemma7(const Trajectory& v, double u0_l2,
                            const burgers::BurgersParams& p, double eps,
                            double tol = default_bound_tol, Exec exec = Exec::parallel);

/// max|u(.,t)| <= C0 max|u0| e^{-nu t} + C1 (max|d| + (4 sqrt2/mu) max|f|).
BoundReport evaluate_prop2(const Trajectory& u, double u0_sup,
                           const backstepping::GainConstants& gains,
                           const backstepping::ReactionDiffusionParams& p,
                           double tol = default_bound_tol, Exec exec = Exec::parallel);

/// ||h||_{2p}^{2p} <= ||h0||_{2p}^{2p} e^{-2p (nu + 2 mu (2p-1)/p^2) t};
/// margins are relative (tolerance 1e-3 by default).
BoundReport lyapunov_lp_decay(const Trajectory& h,
                              const backstepping::ReactionDiffusionParams& p, int lp_p,
                              double rel_tol = 1e-3, Exec exec = Exec::parallel);

/// max|h(.,t)| <= max|h0| e^{-nu t}, relative tolerance 1e-2 by default.
BoundReport sup_norm_decay(const Trajectory& h,
                           const backstepping::ReactionDiffusionParams& p,
                           double rel_tol = 1e-2, Exec exec = Exec::parallel);

/// phi(k) = sup over snapshots of h * #{interior i : field > k}, the discrete
/// measure of the super-level sets; phi is nonincreasing in k by counting.
struct LevelSetProfile {
    std::vector<double> levels;
    std::vector<double> phi;
};

LevelSetProfile level_set_profile(const Trajectory& traj, std::vector<double> levels,
                                  Exec exec = Exec::parallel);

/// I_k(s_j) = trapezoid of ((field - k)_+)^2 per snapshot.
std::vector<double> excess_energy_history(const Trajectory& traj, double k,
                                          Exec exec = Exec::parallel);

/// Verifies I_k(s) >= (h_level - k)^2 |A_{h_level}(s)| at every snapshot and
/// reports the worst margin; requires h_level > k.
inequalities::InequalityMargin check_chebyshev_link(const Trajectory& traj, double k,
                                                    double h_level, double tol = 1e-10,
                                                    Exec exec = Exec::parallel);

// Per-snapshot histories (also used by the benchmark; parallel and serial
// paths are bit-identical).
std::vector<double> l2_squared_history(const Trajectory& traj, Exec exec = Exec::parallel);
std::vector<double> sup_history(const Trajectory& traj, bool interior_only,
                                Exec exec = Exec::parallel);
std::vector<double> lp_pow_history(const Trajectory& traj, int two_p,
                                   Exec exec = Exec::parallel);

}  // namespace pdeiss::bounds
