#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "pdeiss/exec.hpp"
#include "pdeiss/grid.hpp"
#include "pdeiss/signals.hpp"
#include "pdeiss/trajectory.hpp"

namespace pdeiss::backstepping {

/// Reaction coefficient a(x) = a0 + a1 x (constant when a1 = 0).
struct CoefficientSpec {
    double a0 = 0.0;
    double a1 = 0.0;
    double value(double x) const { return a0 + a1 * x; }
};

/// Plant u_t - mu u_xx + a(x) u = f with target decay rate nu: the feedback
/// maps the plant onto w_t - mu w_xx + nu w = f.
struct ReactionDiffusionParams {
    double mu = 1.0;
    CoefficientSpec a;
    double nu = 1.0;
};

void validate(const ReactionDiffusionParams& p);

/// Lower-triangular kernel samples K[i][j] ~ k(x_i, y_j), j <= i, plus the
/// underlying analytic evaluator (the synthesized series or the closed form)
/// and, when requested, precomputed product-quadrature weights for the
/// Volterra transforms. Immutable after synthesis.
class Kernel {
public:
    Kernel(Grid1D grid, std::vector<double> tri,
           std::function<double(double, double)> eval_fn);

    const Grid1D& grid() const { return grid_; }
    double value(int i, int j) const { return tri_[index(i, j)]; }
    double eval(double x, double y) const { return eval_fn_(x, y); }
    double max_abs() const;
    /// k(1, y_j) for all j (the feedback gain row of sampled values).
    std::vector<double> control_row() const;
    /// int_0^1 k(1,y) u(y) dy using the same product quadrature as the
    /// transforms (requires transform weights), so the feedback boundary
    /// value, the compatibility identity and the transforms are mutually
    /// consistent at the discrete level.
    double boundary_functional(std::span<const double> u) const;
    /// Max |k(x_i,x_i) - analytic diagonal| given the diagonal closed form.
    double diagonal_residual(const std::function<double(double)>& diag) const;

    bool has_transform_weights() const { return !quad_.empty(); }
    std::span<const double> transform_weights() const { return quad_; }
    void build_transform_weights(Exec exec = Exec::parallel);

    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) + 1) / 2 +
               static_cast<std::size_t>(j);
    }

private:
    Grid1D grid_;
    std::vector<double> tri_;
    std::function<double(double, double)> eval_fn_;
    std::vector<double> quad_;  // dense n x n, zero above the diagonal
};

struct KernelOptions {
    double tolerance = 1e-12;   // successive-iterate max-norm bound
    int max_iterations = 200;
    bool build_transform_weights = true;
    Exec exec = Exec::parallel;
};

/// Successive approximation for the gain kernel of the Volterra transform
/// w = u - int_0^x k(x,y) u(y) dy. The kernel solves
///   mu (k_xx - k_yy) = (nu - a(y)) k,  k(x,0) = 0,
///   k(x,x) = -(1/(2 mu)) int_0^x (nu - a(y)) dy
/// on the triangle 0 <= y <= x <= 1. Iterates are integrated exactly in
/// characteristic variables (they are polynomials for constant/affine a), so
/// the diagonal condition holds to roundoff. Throws KernelConvergenceError
/// if the series does not settle within max_iterations.
Kernel solve_kernel(const ReactionDiffusionParams& params, const Grid1D& grid,
                    const KernelOptions& opts = {});

/// Kernel of the inverse transform u = w + int_0^x l(x,y) w(y) dy; it solves
/// mu (l_xx - l_yy) = -(nu - a(x)) l (reaction term sign-flipped and
/// evaluated at x) with the same boundary data. The transform-composition
/// property pins this equation down: reading the coefficient at y breaks the
/// identity for non-constant a.
Kernel solve_inverse_kernel(const ReactionDiffusionParams& params, const Grid1D& grid,
                            const KernelOptions& opts = {});

/// Cross-check oracle for constant a0: k(x,y) = -cbar y I1(z)/z with
/// cbar = (nu - a0)/mu and z = sqrt(cbar (x^2 - y^2)), evaluated by the power
/// series of I1(z)/z (the ordinary-Bessel branch when cbar < 0); the limit
/// value at z -> 0 is 1/2. Set inverse = true for the J1-branch inverse kernel.
Kernel kernel_closed_form_constant(double a0, double nu, double mu, const Grid1D& grid,
                                   bool inverse = false,
                                   bool build_transform_weights = false);

/// w_i = u_i - int_0^{x_i} k(x_i,y) u(y) dy using the kernel's quadrature
/// weights (requires build_transform_weights).
ScalarField forward_transform(const ScalarField& field, const Kernel& k, const Grid1D& grid);

/// u_i = w_i + int_0^{x_i} l(x_i,y) w(y) dy.
ScalarField inverse_transform(const ScalarField& field, const Kernel& l, const Grid1D& grid);

enum class TransformKind { forward, inverse };

/// Applies the transform to every snapshot; snapshots are independent, so the
/// parallel path splits across them.
std::vector<ScalarField> transform_trajectory(const Trajectory& traj, const Kernel& kernel,
                                              TransformKind kind,
                                              Exec exec = Exec::parallel);

/// U(t) = d + int_0^1 k(1,y) u(y) dy via the kernel's boundary functional.
double control_input(const ScalarField& u, const Kernel& k, double d_value,
                     const Grid1D& grid);

struct GainConstants {
    double max_k = 0.0;
    double max_l = 0.0;
    double C1 = 1.0;  // 1 + max|l|
    double C0 = 1.0;  // C1 (1 + max|k|)
};

GainConstants gain_constants(const Kernel& k, const Kernel& l);

/// Bump profile corrected so the feedback compatibility identity
/// u0(1) = int_0^1 k(1,y) u0(y) dy holds to roundoff (both sides vanish):
/// u0 = A (x^3(1-x)^3 + s x^4(1-x)^3) with s chosen to zero the trapezoid
/// functional used by control_input. u0'(1) = 0 analytically.
ScalarField make_compatible_initial(double amplitude, const Kernel& k, const Grid1D& grid);

struct SimOptions {
    int output_stride = 1;
    double blowup_guard = 1e8;
};

/// Closed-loop plant with actuation error d and forcing f; the right boundary
/// value at each step is control_input evaluated on the current state.
/// u0_slope_right is the analytic u0'(1) for the derivative compatibility
/// check (tolerance 1e-6); the integral identity is checked within 1e-8.
Trajectory simulate_closed_loop(const ReactionDiffusionParams& params,
                                const ScalarField& u0, double u0_slope_right,
                                const Kernel& k, const SignalSpec& d, const ForcingSpec& f,
                                double t_end, double dt, const Grid1D& grid,
                                const SimOptions& opts = {});

/// Open-loop plant: u(1,t) = d(t) (no feedback). Diverges for sufficiently
/// unstable a; the blow-up is reported through DivergenceError.
Trajectory simulate_open_loop(const ReactionDiffusionParams& params,
                              const InitialConditionSpec& u0, const SignalSpec& d,
                              const ForcingSpec& f, double t_end, double dt,
                              const Grid1D& grid, const SimOptions& opts = {});

struct TargetSplit {
    Trajectory g;  // forced, boundary-driven: g_t - mu g_xx + nu g = f, g(1,t) = d
    Trajectory h;  // homogeneous: h_t - mu h_xx + nu h = 0, h(.,0) = w0
};

TargetSplit simulate_target_split(const ReactionDiffusionParams& params,
                                  const ScalarField& w0, const SignalSpec& d,
                                  const ForcingSpec& f, double t_end, double dt,
                                  const Grid1D& grid, const SimOptions& opts = {});

/// Largest eigenvalue of the discrete operator mu D2 - a(x) on interior nodes
/// (homogeneous Dirichlet), by power iteration on I + tau L with tau chosen
/// to make the iteration matrix positive definite.
double largest_eigenvalue(const ReactionDiffusionParams& params, const Grid1D& grid,
                          bool target_operator);

/// Sup over interior nodes and steps of the first-order discrete residual of
/// the target equation, (w^{j+1}-w^j)/dt - mu D2 w^j + nu w^j - f(., t_j),
/// for consecutive snapshots (stride-1 trajectories).
double target_residual_sup(const std::vector<ScalarField>& w,
                           const std::vector<double>& times,
                           const ReactionDiffusionParams& params, const ForcingSpec& f,
                           const Grid1D& grid);

}  // namespace pdeiss::backstepping
