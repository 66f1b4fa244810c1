#include "pdeiss/backstepping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdeiss/burgers.hpp"
#include "pdeiss/errors.hpp"
#include "pdeiss/norms.hpp"
#include "cn_stepper.hpp"
#include "forcing_state.hpp"

namespace pdeiss::backstepping {

namespace {

using detail::CnStepper;
using detail::ForcingState;

// ---------------------------------------------------------------------------
// Successive approximation in characteristic variables.
//
// With G(xi, eta) = k(x, y), xi = x + y, eta = x - y, the kernel equation
// becomes G_{xi eta} = phi(tau, s) G with phi(tau, s) = theta((tau - s)/2) /
// (4 mu), theta(y) = nu - a(y). Integrating along characteristics with the
// boundary data G(eta, eta) = 0 and G(xi, 0) = -(1/(4 mu)) int_0^xi
// theta(tau/2) dtau yields the Volterra equation
//
//   G(xi, eta) = G0(xi, eta) + int_eta^xi int_0^eta phi(tau, s) G(tau, s) ds dtau.
//
// For constant/affine a every Neumann-series term is a bivariate polynomial
// and the double integral has a closed form, so the iteration below carries
// polynomial coefficients and the only discretization left is the final
// evaluation at grid points.
// ---------------------------------------------------------------------------

struct BivariatePoly {
    int deg = 0;        // max total degree in use
    int cap = 0;        // coefficient array is (cap+1) x (cap+1)
    std::vector<double> c;

    explicit BivariatePoly(int capacity) : cap(capacity) {
        c.assign(static_cast<std::size_t>(cap + 1) * (cap + 1), 0.0);
    }

    double& at(int p, int q) { return c[static_cast<std::size_t>(p) * (cap + 1) + q]; }
    double get(int p, int q) const {
        return c[static_cast<std::size_t>(p) * (cap + 1) + q];
    }

    double eval(double xi, double eta) const {
        double result = 0.0;
        for (int p = deg; p >= 0; --p) {
            double rp = 0.0;
            for (int q = deg; q >= 0; --q) rp = rp * eta + get(p, q);
            result = result * xi + rp;
        }
        return result;
    }

    /// Upper bound of |poly| over the triangle {0 <= eta <= xi, xi + eta <= 2}
    /// (|xi| <= 2, |eta| <= 1).
    double sup_bound() const {
        double b = 0.0;
        double pow2 = 1.0;
        for (int p = 0; p <= deg; ++p) {
            double row = 0.0;
            for (int q = 0; q <= deg - p; ++q) row += std::abs(get(p, q));
            b += row * pow2;
            pow2 *= 2.0;
        }
        return b;
    }
};

// phi(tau, s) = A + B tau + C s (sign already folded into A, B, C).
// T[xi^p eta^q](xi, eta) = int_eta^xi int_0^eta (A + B tau + C s) tau^p s^q ds dtau.
BivariatePoly apply_volterra(const BivariatePoly& in, double A, double B, double C) {
    BivariatePoly out(in.cap);
    out.deg = in.deg + ((B != 0.0 || C != 0.0) ? 3 : 2);
    if (out.deg > in.cap) {
        throw KernelConvergenceError(
            "kernel iteration exceeded the polynomial degree cap without converging");
    }
    for (int p = 0; p <= in.deg; ++p) {
        for (int q = 0; q <= in.deg - p; ++q) {
            const double g = in.get(p, q);
            if (g == 0.0) continue;
            const double t1 = A * g / (static_cast<double>(q + 1) * (p + 1));
            out.at(p + 1, q + 1) += t1;
            out.at(0, p + q + 2) -= t1;
            if (B != 0.0) {
                const double t2 = B * g / (static_cast<double>(q + 1) * (p + 2));
                out.at(p + 2, q + 1) += t2;
                out.at(0, p + q + 3) -= t2;
            }
            if (C != 0.0) {
                const double t3 = C * g / (static_cast<double>(q + 2) * (p + 1));
                out.at(p + 1, q + 2) += t3;
                out.at(0, p + q + 3) -= t3;
            }
        }
    }
    return out;
}

void accumulate(BivariatePoly& sum, const BivariatePoly& term) {
    sum.deg = std::max(sum.deg, term.deg);
    for (int p = 0; p <= term.deg; ++p) {
        for (int q = 0; q <= term.deg - p; ++q) sum.at(p, q) += term.get(p, q);
    }
}

constexpr int kDegreeCap = 260;

// Neumann series G = sum_m T^m[G0]. The gain kernel solves
//   mu (k_xx - k_yy) = theta(y) k, the inverse kernel
//   mu (l_xx - l_yy) = -theta(x) l, with theta = nu - a and identical
// boundary data; in characteristic variables the reaction argument is
// (tau - s)/2 for the gain and (tau + s)/2 for the inverse, which is what
// makes the composed transforms the identity.
BivariatePoly solve_series(const ReactionDiffusionParams& params, bool inverse,
                           const KernelOptions& opts) {
    const double mu = params.mu;
    const double theta0 = params.nu - params.a.a0;  // theta(y) = theta0 - a1 y
    const double a1 = params.a.a1;

    BivariatePoly g0(kDegreeCap);
    g0.deg = 2;
    g0.at(1, 0) = -theta0 / (4.0 * mu);
    g0.at(0, 1) = theta0 / (4.0 * mu);
    g0.at(2, 0) = a1 / (16.0 * mu);
    g0.at(0, 2) = -a1 / (16.0 * mu);

    const double sign = inverse ? -1.0 : 1.0;
    const double A = sign * theta0 / (4.0 * mu);
    const double B = -sign * a1 / (8.0 * mu);
    const double C = a1 / (8.0 * mu);

    BivariatePoly sum = g0;
    BivariatePoly term = g0;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if (term.sup_bound() < opts.tolerance) return sum;
        term = apply_volterra(term, A, B, C);
        accumulate(sum, term);
    }
    if (term.sup_bound() < opts.tolerance) return sum;
    throw KernelConvergenceError("kernel successive approximation did not converge in " +
                                 std::to_string(opts.max_iterations) + " iterations");
}

std::vector<double> eval_on_triangle(const std::function<double(double, double)>& fn,
                                     const Grid1D& grid, Exec exec) {
    const int n = grid.n_nodes;
    std::vector<double> tri(static_cast<std::size_t>(n) * (n + 1) / 2);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * (i + 1) / 2;
        const double x = grid.node(i);
        for (int j = 0; j <= i; ++j) {
            tri[base + static_cast<std::size_t>(j)] = fn(x, grid.node(j));
        }
    }
    return tri;
}

// I1(z)/z as a power series in q = z^2; S(0) = 1/2, and q < 0 gives the
// ordinary-Bessel branch J1.
double bessel_ratio_series(double q) {
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m <= 400; ++m) {
        term *= 0.25 * q / (static_cast<double>(m) * (m + 1));
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) break;
    }
    return 0.5 * sum;
}

double lagrange5(double r, int c) {
    double w = 1.0;
    for (int m = 0; m <= 5; ++m) {
        if (m == c) continue;
        w *= (r - m) / static_cast<double>(c - m);
    }
    return w;
}

long step_count(double t_end, double dt) {
    if (!(t_end > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("simulate: t_end and dt must be positive");
    }
    const long n = std::lround(t_end / dt);
    return n > 0 ? n : 1;
}

}  // namespace

void validate(const ReactionDiffusionParams& p) {
    if (!(p.mu > 0.0) || !(p.nu > 0.0)) {
        throw std::invalid_argument("ReactionDiffusionParams: requires mu > 0 and nu > 0");
    }
}

Kernel::Kernel(Grid1D grid, std::vector<double> tri,
               std::function<double(double, double)> eval_fn)
    : grid_(grid), tri_(std::move(tri)), eval_fn_(std::move(eval_fn)) {}

double Kernel::max_abs() const {
    double m = 0.0;
    for (double v : tri_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> Kernel::control_row() const {
    const int last = grid_.n_nodes - 1;
    std::vector<double> row(grid_.size());
    for (int j = 0; j <= last; ++j) row[static_cast<std::size_t>(j)] = value(last, j);
    return row;
}

double Kernel::boundary_functional(std::span<const double> u) const {
    if (quad_.empty()) {
        throw std::logic_error(
            "boundary_functional requires a kernel built with transform weights");
    }
    const std::size_t n = grid_.size();
    const double* row = quad_.data() + (n - 1) * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * u[j];
    return acc;
}

double Kernel::diagonal_residual(const std::function<double(double)>& diag) const {
    double m = 0.0;
    for (int i = 0; i < grid_.n_nodes; ++i) {
        m = std::max(m, std::abs(value(i, i) - diag(grid_.node(i))));
    }
    return m;
}

void Kernel::build_transform_weights(Exec exec) {
    if (!quad_.empty()) return;
    const int n = grid_.n_nodes;
    const int oversample = 8;
    const double hf = grid_.h / oversample;
    quad_.assign(static_cast<std::size_t>(n) * n, 0.0);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int i = 1; i < n; ++i) {
        double* row = quad_.data() + static_cast<std::size_t>(i) * n;
        const double x = grid_.node(i);
        const int M = oversample * i;
        for (int m = 0; m <= M; ++m) {
            double sw = (m == 0 || m == M) ? hf / 3.0
                        : (m % 2 == 1)     ? 4.0 * hf / 3.0
                                           : 2.0 * hf / 3.0;
            const double y = static_cast<double>(m) * hf;
            const double contrib = sw * eval_fn_(x, y);
            if (m % oversample == 0) {
                row[m / oversample] += contrib;
            } else {
                const double p = static_cast<double>(m) / oversample;
                int j0 = static_cast<int>(std::floor(p)) - 2;
                j0 = std::clamp(j0, 0, n - 6);
                const double r = p - static_cast<double>(j0);
                for (int c = 0; c <= 5; ++c) row[j0 + c] += contrib * lagrange5(r, c);
            }
        }
    }
}

namespace {

Kernel make_series_kernel(const ReactionDiffusionParams& params, const Grid1D& grid,
                          bool inverse, const KernelOptions& opts) {
    validate(params);
    auto poly = std::make_shared<const BivariatePoly>(solve_series(params, inverse, opts));
    auto fn = [poly](double x, double y) { return poly->eval(x + y, x - y); };
    Kernel k(grid, eval_on_triangle(fn, grid, opts.exec), fn);
    if (opts.build_transform_weights) k.build_transform_weights(opts.exec);
    return k;
}

}  // namespace

Kernel solve_kernel(const ReactionDiffusionParams& params, const Grid1D& grid,
                    const KernelOptions& opts) {
    return make_series_kernel(params, grid, false, opts);
}

Kernel solve_inverse_kernel(const ReactionDiffusionParams& params, const Grid1D& grid,
                            const KernelOptions& opts) {
    return make_series_kernel(params, grid, true, opts);
}

Kernel kernel_closed_form_constant(double a0, double nu, double mu, const Grid1D& grid,
                                   bool inverse, bool build_transform_weights) {
    if (!(mu > 0.0)) throw std::invalid_argument("kernel_closed_form_constant: mu > 0");
    const double cbar = (nu - a0) / mu;
    const double branch = inverse ? -1.0 : 1.0;
    auto fn = [cbar, branch](double x, double y) {
        return -cbar * y * bessel_ratio_series(branch * cbar * (x * x - y * y));
    };
    Kernel k(grid, eval_on_triangle(fn, grid, Exec::parallel), fn);
    if (build_transform_weights) k.build_transform_weights();
    return k;
}

namespace {

ScalarField apply_weights(const ScalarField& field, const Kernel& kernel, double sign,
                          const Grid1D& grid) {
    require_on_grid(field, grid);
    if (!kernel.has_transform_weights()) {
        throw std::logic_error("transform requires a kernel built with transform weights");
    }
    const int n = grid.n_nodes;
    std::span<const double> w = kernel.transform_weights();
    ScalarField out(grid.size());
    out[0] = field[0];
    for (int i = 1; i < n; ++i) {
        // Interpolation stencils near the moving endpoint spill at most two
        // columns past the diagonal, so the row is dotted in full.
        const double* row = w.data() + static_cast<std::size_t>(i) * n;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += row[j] * field[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = field[static_cast<std::size_t>(i)] + sign * acc;
    }
    return out;
}

}  // namespace

ScalarField forward_transform(const ScalarField& field, const Kernel& k, const Grid1D& grid) {
    return apply_weights(field, k, -1.0, grid);
}

ScalarField inverse_transform(const ScalarField& field, const Kernel& l, const Grid1D& grid) {
    return apply_weights(field, l, +1.0, grid);
}

std::vector<ScalarField> transform_trajectory(const Trajectory& traj, const Kernel& kernel,
                                              TransformKind kind, Exec exec) {
    const double sign = kind == TransformKind::forward ? -1.0 : 1.0;
    const std::size_t count = traj.samples();
    std::vector<ScalarField> out(count);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long j = 0; j < static_cast<long>(count); ++j) {
        const auto f = traj.field(static_cast<std::size_t>(j));
        out[static_cast<std::size_t>(j)] =
            apply_weights(ScalarField(f.begin(), f.end()), kernel, sign, traj.grid());
    }
    return out;
}

double control_input(const ScalarField& u, const Kernel& k, double d_value,
                     const Grid1D& grid) {
    require_on_grid(u, grid);
    return d_value + k.boundary_functional(u);
}

GainConstants gain_constants(const Kernel& k, const Kernel& l) {
    GainConstants g;
    g.max_k = k.max_abs();
    g.max_l = l.max_abs();
    g.C1 = 1.0 + g.max_l;
    g.C0 = g.C1 * (1.0 + g.max_k);
    return g;
}

ScalarField make_compatible_initial(double amplitude, const Kernel& k, const Grid1D& grid) {
    const ScalarField base = sample(grid, [](double x) {
        const double a = x * (1.0 - x);
        return a * a * a;
    });
    const ScalarField corr = sample(grid, [](double x) {
        const double a = 1.0 - x;
        return x * x * x * x * a * a * a;
    });
    const double f_base = -k.boundary_functional(base);
    const double f_corr = -k.boundary_functional(corr);
    if (std::abs(f_corr) < 1e-14) {
        throw std::invalid_argument(
            "make_compatible_initial: correction profile is orthogonal to the gain row");
    }
    const double s = -f_base / f_corr;
    ScalarField u0(grid.size());
    for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = amplitude * (base[i] + s * corr[i]);
    return u0;
}

namespace {

// Shared linear march for the reaction-diffusion systems. The right boundary
// is d(t) plus, when a feedback kernel is given, the trapezoid functional
// int_0^1 k(1,y) u(y) dy of the current state.
Trajectory march_linear(const ReactionDiffusionParams& params,
                        const std::vector<double>& reaction, const ScalarField& u0,
                        const SignalSpec& d, const ForcingSpec& f, const Kernel* feedback,
                        double t_end, double dt, const Grid1D& grid,
                        const SimOptions& opts) {
    const long n_steps = step_count(t_end, dt);
    const std::size_t n = grid.size();

    ScalarField u = u0;
    ForcingState fs(f, grid);

    Trajectory traj(grid);
    traj.reserve(static_cast<std::size_t>(n_steps / opts.output_stride) + 2);
    traj.append(0.0, u, d.value(0.0), fs.sup, fs.l2_int);

    CnStepper cn(grid, dt, params.mu, reaction);
    std::vector<double> expl(n, 0.0);
    ScalarField next(n);

    for (long k = 0; k < n_steps; ++k) {
        const double t_next = static_cast<double>(k + 1) * dt;
        const double d_next = d.value(t_next);
        double right = d_next;
        if (feedback != nullptr) right += feedback->boundary_functional(u);
        fs.eval_next(t_next, dt, grid);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            expl[i] = 0.5 * (fs.f_now[i] + fs.f_next[i]);
        }
        fs.commit();
        cn.step(u, expl, 0.0, right, next);
        detail::check_finite_or_throw(next, opts.blowup_guard, t_next);
        u.swap(next);
        if ((k + 1) % opts.output_stride == 0 || k + 1 == n_steps) {
            traj.append(t_next, u, d_next, fs.sup, fs.l2_int);
        }
    }
    return traj;
}

std::vector<double> reaction_samples(const ReactionDiffusionParams& params,
                                     const Grid1D& grid) {
    std::vector<double> a(grid.size());
    for (int i = 0; i < grid.n_nodes; ++i) {
        a[static_cast<std::size_t>(i)] = params.a.value(grid.node(i));
    }
    return a;
}

}  // namespace

Trajectory simulate_closed_loop(const ReactionDiffusionParams& params,
                                const ScalarField& u0, double u0_slope_right,
                                const Kernel& k, const SignalSpec& d, const ForcingSpec& f,
                                double t_end, double dt, const Grid1D& grid,
                                const SimOptions& opts) {
    validate(params);
    require_on_grid(u0, grid);
    if (std::abs(u0.front()) > 1e-12) {
        throw std::invalid_argument("closed loop: u0(0) must vanish");
    }
    const double integral_residual = u0.back() - k.boundary_functional(u0);
    if (std::abs(integral_residual) > 1e-8) {
        throw std::invalid_argument(
            "closed loop: u0(1) != int k(1,y) u0(y) dy (residual " +
            std::to_string(integral_residual) + ")");
    }
    // d/dx k(x,x) = -(nu - a(x))/(2 mu); condition at x = 1.
    const double diag_slope = -(params.nu - params.a.value(1.0)) / (2.0 * params.mu);
    const double k11 = k.value(grid.n_nodes - 1, grid.n_nodes - 1);
    const double derivative_residual = u0.back() * diag_slope + u0_slope_right * k11;
    if (std::abs(derivative_residual) > 1e-6) {
        throw std::invalid_argument("closed loop: derivative compatibility residual " +
                                    std::to_string(derivative_residual) + " exceeds 1e-6");
    }
    return march_linear(params, reaction_samples(params, grid), u0, d, f, &k, t_end, dt,
                        grid, opts);
}

Trajectory simulate_open_loop(const ReactionDiffusionParams& params,
                              const InitialConditionSpec& u0, const SignalSpec& d,
                              const ForcingSpec& f, double t_end, double dt,
                              const Grid1D& grid, const SimOptions& opts) {
    validate(params);
    const auto compat = burgers::check_compatibility(u0, d, f);
    if (!compat.all_pass) {
        throw std::invalid_argument("open loop: data violate a compatibility condition");
    }
    return march_linear(params, reaction_samples(params, grid), u0.realize(grid), d, f,
                        nullptr, t_end, dt, grid, opts);
}

TargetSplit simulate_target_split(const ReactionDiffusionParams& params,
                                  const ScalarField& w0, const SignalSpec& d,
                                  const ForcingSpec& f, double t_end, double dt,
                                  const Grid1D& grid, const SimOptions& opts) {
    validate(params);
    require_on_grid(w0, grid);
    if (std::abs(w0.front()) > 1e-10 || std::abs(w0.back()) > 1e-10) {
        throw std::invalid_argument("target split: w0 must vanish at both ends");
    }
    const std::vector<double> reaction(grid.size(), params.nu);
    TargetSplit ts{
        march_linear(params, reaction, ScalarField(grid.size(), 0.0), d, f, nullptr, t_end,
                     dt, grid, opts),
        march_linear(params, reaction, w0, SignalSpec::zero(), ForcingSpec::zero(), nullptr,
                     t_end, dt, grid, opts)};
    return ts;
}

double largest_eigenvalue(const ReactionDiffusionParams& params, const Grid1D& grid,
                          bool target_operator) {
    validate(params);
    const int n = grid.n_nodes;
    const std::size_t m = static_cast<std::size_t>(n) - 2;
    std::vector<double> a(m);
    double amax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = target_operator ? params.nu : params.a.value(grid.node(static_cast<int>(i) + 1));
        amax = std::max(amax, std::abs(a[i]));
    }
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    const double tau = 1.0 / (4.0 * params.mu * inv_h2 + amax + 1.0);

    std::vector<double> x(m), y(m);
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = grid.node(static_cast<int>(i) + 1);
        x[i] = xi * (1.0 - xi);
        norm += x[i] * x[i];
    }
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;

    double rho = 0.0;
    for (int iter = 0; iter < 500000; ++iter) {
        for (std::size_t i = 0; i < m; ++i) {
            const double left = i > 0 ? x[i - 1] : 0.0;
            const double right = i + 1 < m ? x[i + 1] : 0.0;
            y[i] = x[i] + tau * (params.mu * (left - 2.0 * x[i] + right) * inv_h2 -
                                 a[i] * x[i]);
        }
        double dot = 0.0, ynorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            dot += x[i] * y[i];
            ynorm += y[i] * y[i];
        }
        ynorm = std::sqrt(ynorm);
        for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / ynorm;
        if (iter > 0 && std::abs(dot - rho) < 1e-15) {
            rho = dot;
            break;
        }
        rho = dot;
    }
    return (rho - 1.0) / tau;
}

double target_residual_sup(const std::vector<ScalarField>& w,
                           const std::vector<double>& times,
                           const ReactionDiffusionParams& params, const ForcingSpec& f,
                           const Grid1D& grid) {
    if (w.size() != times.size() || w.size() < 2) {
        throw std::invalid_argument("target_residual_sup: need matching snapshot/time lists");
    }
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    double sup = 0.0;
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        const double dt = times[j + 1] - times[j];
        for (int i = 1; i + 1 < grid.n_nodes; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            const double lap = (w[j][ii + 1] - 2.0 * w[j][ii] + w[j][ii - 1]) * inv_h2;
            const double r = (w[j + 1][ii] - w[j][ii]) / dt - params.mu * lap +
                             params.nu * w[j][ii] - f.value(grid.node(i), times[j]);
            sup = std::max(sup, std::abs(r));
        }
    }
    return sup;
}

}  // namespace pdeiss::backstepping
