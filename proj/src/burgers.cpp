#include "pdeiss/burgers.hpp"

#include <cmath>
#include <stdexcept>

#include "pdeiss/errors.hpp"
#include "pdeiss/norms.hpp"
#include "cn_stepper.hpp"
#include "forcing_state.hpp"

namespace pdeiss::burgers {

namespace {

using detail::CnStepper;
using detail::ForcingState;

// nu (u^2/2)_x by central differences at interior nodes, written into conv.
void conservative_convection(std::span<const double> u, double nu, const Grid1D& g,
                             std::vector<double>& conv) {
    const double c = nu / (4.0 * g.h);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        conv[i] = c * (u[i + 1] * u[i + 1] - u[i - 1] * u[i - 1]);
    }
}

// nu (w v)_x by central differences.
void coupling_term(std::span<const double> w, std::span<const double> v, double nu,
                   const Grid1D& g, std::vector<double>& out) {
    const double c = nu / (2.0 * g.h);
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        out[i] = c * (w[i + 1] * v[i + 1] - w[i - 1] * v[i - 1]);
    }
}

void enforce_stability(const BurgersParams& p, const Grid1D& g, double dt, double sup_state,
                       double d_next, double t) {
    if (p.nu <= 0.0) return;
    const double limit = 0.5 * g.h / (p.nu * (sup_state + std::abs(d_next) + 1.0));
    if (dt > limit) {
        throw StabilityError("dt = " + std::to_string(dt) +
                                 " exceeds the convective stability limit " +
                                 std::to_string(limit) + " at t = " + std::to_string(t),
                             t, dt, limit);
    }
}

long step_count(double t_end, double dt) {
    if (!(t_end > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("simulate: t_end and dt must be positive");
    }
    const long n = std::lround(t_end / dt);
    return n > 0 ? n : 1;
}

void require_compatible(const InitialConditionSpec& u0, const SignalSpec& d,
                        const ForcingSpec& f) {
    const CompatibilityReport rep = check_compatibility(u0, d, f);
    if (!rep.all_pass) {
        throw std::invalid_argument(
            "simulate: initial/boundary/forcing data violate a compatibility condition");
    }
}

}  // namespace

void validate(const BurgersParams& p) {
    if (!(p.mu > 0.0) || !(p.nu >= 0.0)) {
        throw std::invalid_argument("BurgersParams: requires mu > 0 and nu >= 0");
    }
}

CompatibilityReport check_compatibility(const InitialConditionSpec& u0, const SignalSpec& d,
                                        const ForcingSpec& f, double tol) {
    CompatibilityReport rep;
    rep.tol = tol;
    auto add = [&](const std::string& name, double residual) {
        const bool pass = std::abs(residual) <= tol;
        rep.conditions.push_back({name, residual, pass});
        rep.all_pass = rep.all_pass && pass;
    };
    add("u0(0)", u0.value_at0());
    add("u0''(0)", u0.second_derivative_at0());
    add("u0(1)", u0.value_at1());
    add("u0''(1)", u0.second_derivative_at1());
    add("d(0)", d.value(0.0));
    add("d'(0)", d.derivative_at_zero());
    add("f(0,0)", f.value(0.0, 0.0));
    add("f(1,0)", f.value(1.0, 0.0));
    return rep;
}

ScalarField step(const ScalarField& state, const BurgersParams& params,
                 const ScalarField& f_now, const ScalarField& f_next, double d_next,
                 double dt, const Grid1D& grid, const SimOptions& opts) {
    validate(params);
    require_on_grid(state, grid);
    require_on_grid(f_now, grid);
    require_on_grid(f_next, grid);
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (!all_finite(state)) throw std::invalid_argument("step: state must be finite");

    if (opts.enforce_stability_limit) {
        enforce_stability(params, grid, dt, max_abs(state), d_next, 0.0);
    }
    const std::size_t n = grid.size();
    std::vector<double> expl(n, 0.0);
    std::vector<double> conv(n, 0.0);
    if (params.nu != 0.0) conservative_convection(state, params.nu, grid, conv);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        expl[i] = -conv[i] + 0.5 * (f_now[i] + f_next[i]);
    }
    CnStepper cn(grid, dt, params.mu, std::vector<double>(n, 0.0));
    ScalarField out(n);
    cn.step(state, expl, 0.0, d_next, out);
    detail::check_finite_or_throw(out, opts.blowup_guard, dt);
    return out;
}

Trajectory simulate(const BurgersParams& params, const InitialConditionSpec& u0,
                    const SignalSpec& d, const ForcingSpec& f, double t_end, double dt,
                    const Grid1D& grid, const SimOptions& opts) {
    validate(params);
    require_compatible(u0, d, f);
    const long n_steps = step_count(t_end, dt);
    const std::size_t n = grid.size();

    ScalarField u = u0.realize(grid);
    ForcingState fs(f, grid);
    Trajectory traj(grid);
    traj.reserve(static_cast<std::size_t>(n_steps / opts.output_stride) + 2);
    traj.append(0.0, u, d.value(0.0), fs.sup, fs.l2_int);

    CnStepper cn(grid, dt, params.mu, std::vector<double>(n, 0.0));
    std::vector<double> expl(n, 0.0);
    std::vector<double> conv(n, 0.0);
    ScalarField next(n);

    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double t_next = static_cast<double>(k + 1) * dt;
        const double d_next = d.value(t_next);
        if (opts.enforce_stability_limit) {
            enforce_stability(params, grid, dt, max_abs(u), d_next, t);
        }
        fs.eval_next(t_next, dt, grid);
        if (params.nu != 0.0) conservative_convection(u, params.nu, grid, conv);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            expl[i] = -conv[i] + 0.5 * (fs.f_now[i] + fs.f_next[i]);
        }
        fs.commit();
        cn.step(u, expl, 0.0, d_next, next);
        detail::check_finite_or_throw(next, opts.blowup_guard, t_next);
        u.swap(next);
        if ((k + 1) % opts.output_stride == 0 || k + 1 == n_steps) {
            traj.append(t_next, u, d_next, fs.sup, fs.l2_int);
        }
    }
    return traj;
}

namespace {

SplitTrajectories simulate_splitting(const BurgersParams& params,
                                     const InitialConditionSpec& u0, const SignalSpec& d,
                                     const ForcingSpec& f, double t_end, double dt,
                                     const Grid1D& grid, const SimOptions& opts,
                                     bool forcing_in_w) {
    validate(params);
    require_compatible(u0, d, f);
    const long n_steps = step_count(t_end, dt);
    const std::size_t n = grid.size();

    const ForcingSpec fw_spec = forcing_in_w ? f : ForcingSpec::zero();
    const ForcingSpec fv_spec = forcing_in_w ? ForcingSpec::zero() : f;

    ScalarField w(n, 0.0);
    ScalarField v = u0.realize(grid);
    ForcingState fw(fw_spec, grid);
    ForcingState fv(fv_spec, grid);

    SplitTrajectories st{Trajectory(grid), Trajectory(grid)};
    const std::size_t reserve = static_cast<std::size_t>(n_steps / opts.output_stride) + 2;
    st.w.reserve(reserve);
    st.v.reserve(reserve);
    st.w.append(0.0, w, d.value(0.0), fw.sup, fw.l2_int);
    st.v.append(0.0, v, 0.0, fv.sup, fv.l2_int);

    CnStepper cn_w(grid, dt, params.mu, std::vector<double>(n, 0.0));
    CnStepper cn_v(grid, dt, params.mu, std::vector<double>(n, 0.0));
    std::vector<double> expl(n, 0.0);
    std::vector<double> conv(n, 0.0);
    std::vector<double> couple(n, 0.0);
    ScalarField w_next(n);
    ScalarField v_next(n);

    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double t_next = static_cast<double>(k + 1) * dt;
        const double d_next = d.value(t_next);
        if (opts.enforce_stability_limit) {
            enforce_stability(params, grid, dt, max_abs(w) + max_abs(v), d_next, t);
        }

        // w subsystem: boundary d, zero initial data.
        fw.eval_next(t_next, dt, grid);
        if (params.nu != 0.0) conservative_convection(w, params.nu, grid, conv);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            expl[i] = -conv[i] + 0.5 * (fw.f_now[i] + fw.f_next[i]);
        }
        fw.commit();
        cn_w.step(w, expl, 0.0, d_next, w_next);
        detail::check_finite_or_throw(w_next, opts.blowup_guard, t_next);

        // v subsystem: homogeneous boundary, coupled through nu (w v)_x at
        // the current time level.
        fv.eval_next(t_next, dt, grid);
        if (params.nu != 0.0) {
            conservative_convection(v, params.nu, grid, conv);
            coupling_term(w, v, params.nu, grid, couple);
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            expl[i] = -conv[i] - couple[i] + 0.5 * (fv.f_now[i] + fv.f_next[i]);
        }
        fv.commit();
        cn_v.step(v, expl, 0.0, 0.0, v_next);
        detail::check_finite_or_throw(v_next, opts.blowup_guard, t_next);

        w.swap(w_next);
        v.swap(v_next);
        if ((k + 1) % opts.output_stride == 0 || k + 1 == n_steps) {
            st.w.append(t_next, w, d_next, fw.sup, fw.l2_int);
            st.v.append(t_next, v, 0.0, fv.sup, fv.l2_int);
        }
    }
    return st;
}

}  // namespace

SplitTrajectories simulate_splitting_a(const BurgersParams& params,
                                       const InitialConditionSpec& u0, const SignalSpec& d,
                                       const ForcingSpec& f, double t_end, double dt,
                                       const Grid1D& grid, const SimOptions& opts) {
    return simulate_splitting(params, u0, d, f, t_end, dt, grid, opts, true);
}

SplitTrajectories simulate_splitting_b(const BurgersParams& params,
                                       const InitialConditionSpec& u0, const SignalSpec& d,
                                       const ForcingSpec& f, double t_end, double dt,
                                       const Grid1D& grid, const SimOptions& opts) {
    return simulate_splitting(params, u0, d, f, t_end, dt, grid, opts, false);
}

}  // namespace pdeiss::burgers
