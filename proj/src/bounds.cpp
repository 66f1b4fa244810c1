#include "pdeiss/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "pdeiss/norms.hpp"

namespace pdeiss::bounds {

namespace {

constexpr double sqrt2 = 1.4142135623730951;

double ipow(double base, int e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// Running max of |boundary_history| (max over output samples up to t_j).
std::vector<double> running_abs_boundary_max(const Trajectory& traj) {
    const auto& b = traj.boundary_history();
    std::vector<double> out(b.size());
    double m = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        m = std::max(m, std::abs(b[j]));
        out[j] = m;
    }
    return out;
}

std::vector<double> running_max(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j) {
        m = std::max(m, v[j]);
        out[j] = m;
    }
    return out;
}

BoundReport assemble(std::string name, const Trajectory& traj,
                     const std::vector<double>& lhs, const std::vector<double>& rhs,
                     double tol, bool relative) {
    BoundReport rep;
    rep.name = std::move(name);
    rep.tol = tol;
    rep.relative = relative;
    rep.records.resize(lhs.size());
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lhs.size(); ++j) {
        BoundRecord& r = rep.records[j];
        r.t = traj.times()[j];
        r.lhs = lhs[j];
        r.rhs = rhs[j];
        r.margin = relative ? (rhs[j] - lhs[j]) / std::max(std::abs(rhs[j]), 1e-300)
                            : rhs[j] - lhs[j];
        if (relative && rhs[j] == 0.0 && lhs[j] == 0.0) r.margin = 0.0;
        rep.min_margin = std::min(rep.min_margin, r.margin);
    }
    rep.satisfied = rep.min_margin >= -tol;
    return rep;
}

}  // namespace

std::vector<double> l2_squared_history(const Trajectory& traj, Exec exec) {
    const long count = static_cast<long>(traj.samples());
    std::vector<double> out(static_cast<std::size_t>(count));
    const Grid1D& g = traj.grid();
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long j = 0; j < count; ++j) {
        const double l2 = l2_norm(traj.field(static_cast<std::size_t>(j)), g);
        out[static_cast<std::size_t>(j)] = l2 * l2;
    }
    return out;
}

std::vector<double> sup_history(const Trajectory& traj, bool interior_only, Exec exec) {
    const long count = static_cast<long>(traj.samples());
    std::vector<double> out(static_cast<std::size_t>(count));
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long j = 0; j < count; ++j) {
        const auto f = traj.field(static_cast<std::size_t>(j));
        double m = 0.0;
        const std::size_t lo = interior_only ? 1 : 0;
        const std::size_t hi = interior_only ? f.size() - 1 : f.size();
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(f[i]));
        out[static_cast<std::size_t>(j)] = m;
    }
    return out;
}

std::vector<double> lp_pow_history(const Trajectory& traj, int two_p, Exec exec) {
    if (two_p < 1) throw std::invalid_argument("lp_pow_history: exponent must be >= 1");
    const long count = static_cast<long>(traj.samples());
    std::vector<double> out(static_cast<std::size_t>(count));
    const Grid1D& g = traj.grid();
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long j = 0; j < count; ++j) {
        const auto f = traj.field(static_cast<std::size_t>(j));
        double s = 0.5 * (ipow(std::abs(f.front()), two_p) + ipow(std::abs(f.back()), two_p));
        for (std::size_t i = 1; i + 1 < f.size(); ++i) s += ipow(std::abs(f[i]), two_p);
        out[static_cast<std::size_t>(j)] = s * g.h;
    }
    return out;
}

Admissibility admissibility_theorem1(const SignalSpec& d, const ForcingSpec& f,
                                     const burgers::BurgersParams& p, double horizon) {
    Admissibility a;
    a.condition = "sup|d| + (4*sqrt(2)/mu) sup|f| < mu/nu";
    a.value = d.sup_abs(horizon) + 4.0 * sqrt2 / p.mu * f.sup_abs(horizon);
    a.threshold = p.mu / p.nu;
    a.pass = a.value < a.threshold;
    return a;
}

Admissibility admissibility_theorem2(const SignalSpec& d, const burgers::BurgersParams& p,
                                     double horizon) {
    Admissibility a;
    a.condition = "sup|d| < mu/nu";
    a.value = d.sup_abs(horizon);
    a.threshold = p.mu / p.nu;
    a.pass = a.value < a.threshold;
    return a;
}

BoundReport evaluate_theorem1(const Trajectory& u, double u0_l2,
                              const burgers::BurgersParams& p, double tol, Exec exec) {
    const std::vector<double> lhs = l2_squared_history(u, exec);
    const std::vector<double> dmax = running_abs_boundary_max(u);
    const auto& fsup = u.forcing_sup_history();
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = 2.0 * u0_l2 * u0_l2 * std::exp(-p.mu * u.times()[j]) +
                 4.0 * dmax[j] * dmax[j] + 128.0 / (p.mu * p.mu) * fsup[j] * fsup[j];
    }
    return assemble("theorem1", u, lhs, rhs, tol, false);
}

BoundReport evaluate_theorem2(const Trajectory& u, double u0_l2,
                              const burgers::BurgersParams& p, double eps, double tol,
                              Exec exec) {
    if (!(eps > 0.0) || !(eps < p.mu)) {
        throw std::invalid_argument("evaluate_theorem2: eps must lie in (0, mu)");
    }
    const std::vector<double> lhs = l2_squared_history(u, exec);
    const std::vector<double> dmax = running_abs_boundary_max(u);
    const auto& fl2 = u.forcing_l2_history();
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = 2.0 * u0_l2 * u0_l2 * std::exp(-(p.mu - eps) * u.times()[j]) +
                 2.0 * dmax[j] * dmax[j] + 2.0 / eps * fl2[j];
    }
    return assemble("theorem2", u, lhs, rhs, tol, false);
}

namespace {

BoundReport sup_bound_report(const std::string& name, const Trajectory& w,
                             const burgers::BurgersParams& p, double tol) {
    const std::vector<double> lhs = running_max(sup_history(w, true, Exec::parallel));
    const std::vector<double> dmax = running_abs_boundary_max(w);
    const auto& fsup = w.forcing_sup_history();
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = dmax[j] + 4.0 * sqrt2 / p.mu * fsup[j];
    }
    return assemble(name, w, lhs, rhs, tol, false);
}

}  // namespace

BoundReport evaluate_lemma4(const Trajectory& w, const burgers::BurgersParams& p,
                            double tol) {
    return sup_bound_report("lemma4", w, p, tol);
}

BoundReport evaluate_lemma6(const Trajectory& w, const burgers::BurgersParams& p,
                            double tol) {
    return sup_bound_report("lemma6", w, p, tol);
}

BoundReport evaluate_lemma5(const Trajectory& v, double u0_l2,
                            const burgers::BurgersParams& p, double tol, Exec exec) {
    const std::vector<double> lhs = l2_squared_history(v, exec);
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = u0_l2 * u0_l2 * std::exp(-p.mu * v.times()[j]);
    }
    return assemble("lemma5", v, lhs, rhs, tol, false);
}

BoundReport evaluate_lemma7(const Trajectory& v, double u0_l2,
                            const burgers::BurgersParams& p, double eps, double tol,
                            Exec exec) {
    if (!(eps > 0.0) || !(eps < p.mu)) {
        throw std::invalid_argument("evaluate_lemma7: eps must lie in (0, mu)");
    }
    const std::vector<double> lhs = l2_squared_history(v, exec);
    const auto& fl2 = v.forcing_l2_history();
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = u0_l2 * u0_l2 * std::exp(-(p.mu - eps) * v.times()[j]) + fl2[j] / eps;
    }
    return assemble("lemma7", v, lhs, rhs, tol, false);
}

BoundReport evaluate_prop2(const Trajectory& u, double u0_sup,
                           const backstepping::GainConstants& gains,
                           const backstepping::ReactionDiffusionParams& p, double tol,
                           Exec exec) {
    const std::vector<double> lhs = sup_history(u, false, exec);
    const std::vector<double> dmax = running_abs_boundary_max(u);
    const auto& fsup = u.forcing_sup_history();
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = gains.C0 * u0_sup * std::exp(-p.nu * u.times()[j]) +
                 gains.C1 * (dmax[j] + 4.0 * sqrt2 / p.mu * fsup[j]);
    }
    return assemble("prop2", u, lhs, rhs, tol, false);
}

BoundReport lyapunov_lp_decay(const Trajectory& h,
                              const backstepping::ReactionDiffusionParams& p, int lp_p,
                              double rel_tol, Exec exec) {
    if (lp_p < 1) throw std::invalid_argument("lyapunov_lp_decay: p must be >= 1");
    const std::vector<double> lhs = lp_pow_history(h, 2 * lp_p, exec);
    const double pd = static_cast<double>(lp_p);
    const double rate = 2.0 * pd * (p.nu + 2.0 * p.mu * (2.0 * pd - 1.0) / (pd * pd));
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = lhs[0] * std::exp(-rate * h.times()[j]);
    }
    return assemble("lyapunov_p" + std::to_string(lp_p), h, lhs, rhs, rel_tol, true);
}

BoundReport sup_norm_decay(const Trajectory& h,
                           const backstepping::ReactionDiffusionParams& p, double rel_tol,
                           Exec exec) {
    const std::vector<double> lhs = sup_history(h, false, exec);
    std::vector<double> rhs(lhs.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        rhs[j] = lhs[0] * std::exp(-p.nu * h.times()[j]);
    }
    return assemble("sup_decay", h, lhs, rhs, rel_tol, true);
}

LevelSetProfile level_set_profile(const Trajectory& traj, std::vector<double> levels,
                                  Exec exec) {
    for (std::size_t l = 1; l < levels.size(); ++l) {
        if (!(levels[l] > levels[l - 1])) {
            throw std::invalid_argument("level_set_profile: levels must be increasing");
        }
    }
    const long count = static_cast<long>(traj.samples());
    const std::size_t nl = levels.size();
    std::vector<double> per_sample(static_cast<std::size_t>(count) * nl, 0.0);
    const double h = traj.grid().h;
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long j = 0; j < count; ++j) {
        const auto f = traj.field(static_cast<std::size_t>(j));
        double* row = per_sample.data() + static_cast<std::size_t>(j) * nl;
        for (std::size_t l = 0; l < nl; ++l) {
            int cnt = 0;
            for (std::size_t i = 1; i + 1 < f.size(); ++i) {
                if (f[i] > levels[l]) ++cnt;
            }
            row[l] = h * static_cast<double>(cnt);
        }
    }
    LevelSetProfile prof;
    prof.levels = std::move(levels);
    prof.phi.assign(nl, 0.0);
    for (long j = 0; j < count; ++j) {
        for (std::size_t l = 0; l < nl; ++l) {
            prof.phi[l] = std::max(prof.phi[l],
                                   per_sample[static_cast<std::size_t>(j) * nl + l]);
        }
    }
    return prof;
}

std::vector<double> excess_energy_history(const Trajectory& traj, double k, Exec exec) {
    const long count = static_cast<long>(traj.samples());
    std::vector<double> out(static_cast<std::size_t>(count));
    const Grid1D& g = traj.grid();
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long j = 0; j < count; ++j) {
        const auto f = traj.field(static_cast<std::size_t>(j));
        auto plus2 = [k](double v) {
            const double e = std::max(v - k, 0.0);
            return e * e;
        };
        double s = 0.5 * (plus2(f.front()) + plus2(f.back()));
        for (std::size_t i = 1; i + 1 < f.size(); ++i) s += plus2(f[i]);
        out[static_cast<std::size_t>(j)] = s * g.h;
    }
    return out;
}

inequalities::InequalityMargin check_chebyshev_link(const Trajectory& traj, double k,
                                                    double h_level, double tol, Exec exec) {
    if (!(h_level > k)) {
        throw std::invalid_argument("check_chebyshev_link: requires h_level > k");
    }
    const std::vector<double> ik = excess_energy_history(traj, k, exec);
    std::vector<double> level{h_level};
    const double gap2 = (h_level - k) * (h_level - k);
    const double h = traj.grid().h;

    inequalities::InequalityMargin worst;
    worst.margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        const auto f = traj.field(j);
        int cnt = 0;
        for (std::size_t i = 1; i + 1 < f.size(); ++i) {
            if (f[i] > h_level) ++cnt;
        }
        const double rhs = gap2 * h * static_cast<double>(cnt);
        const double margin = ik[j] - rhs;
        if (margin < worst.margin) {
            worst.lhs = rhs;   // the bounded quantity
            worst.rhs = ik[j]; // the bounding quantity
            worst.margin = margin;
        }
    }
    worst.tol = tol;
    worst.satisfied = worst.margin >= -tol;
    return worst;
}

}  // namespace pdeiss::bounds
