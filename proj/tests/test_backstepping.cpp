#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdeiss/backstepping.hpp"
#include "pdeiss/errors.hpp"
#include "pdeiss/norms.hpp"
#include "pdeiss/random_fields.hpp"
#include "pdeiss/rng.hpp"

using namespace pdeiss;
using namespace pdeiss::backstepping;

namespace {

constexpr double pi = std::numbers::pi;

const ReactionDiffusionParams kUnstable{1.0, {-10.0, 0.0}, 1.0};  // cbar = 11

double tri_max_diff(const Kernel& a, const Kernel& b) {
    double m = 0.0;
    for (int i = 0; i < a.grid().n_nodes; ++i) {
        for (int j = 0; j <= i; ++j) m = std::max(m, std::abs(a.value(i, j) - b.value(i, j)));
    }
    return m;
}

}  // namespace

TEST_CASE("kernel vanishes when a = nu") {
    const Grid1D g = make_grid(101);
    const ReactionDiffusionParams p{1.0, {1.0, 0.0}, 1.0};
    const Kernel k = solve_kernel(p, g);
    const Kernel l = solve_inverse_kernel(p, g);
    CHECK(k.max_abs() == 0.0);
    CHECK(l.max_abs() == 0.0);
    const Kernel cf = kernel_closed_form_constant(1.0, 1.0, 1.0, g);
    CHECK(cf.max_abs() == 0.0);
}

TEST_CASE("diagonal condition holds to roundoff") {
    const Grid1D g = make_grid(201);
    const Kernel k = solve_kernel(kUnstable, g);
    // k(x,x) = -((nu - a0)/(2 mu)) x = -5.5 x
    auto diag = [](double x) { return -5.5 * x; };
    CHECK(k.diagonal_residual(diag) <= 1e-10);
    CHECK(k.value(g.n_nodes - 1, g.n_nodes - 1) == doctest::Approx(-5.5).epsilon(1e-12));

    const Kernel cf = kernel_closed_form_constant(-10.0, 1.0, 1.0, g);
    CHECK(cf.diagonal_residual(diag) <= 1e-12);
}

TEST_CASE("successive approximation matches the Bessel closed form") {
    const Grid1D g = make_grid(201);
    const Kernel k = solve_kernel(kUnstable, g);
    const Kernel k_cf = kernel_closed_form_constant(-10.0, 1.0, 1.0, g);
    CHECK(tri_max_diff(k, k_cf) <= 1e-8);

    const Kernel l = solve_inverse_kernel(kUnstable, g);
    const Kernel l_cf = kernel_closed_form_constant(-10.0, 1.0, 1.0, g, true);
    CHECK(tri_max_diff(l, l_cf) <= 1e-8);
}

TEST_CASE("closed-form qualitative profile along the gain row") {
    const Grid1D g = make_grid(201);
    const Kernel k = kernel_closed_form_constant(-10.0, 1.0, 1.0, g);
    CHECK(k.value(g.n_nodes - 1, 0) == 0.0);  // k(1,0) = 0
    // |k(1,y)| grows from 0 to an interior extremum.
    const auto row = k.control_row();
    std::size_t argmax = 0;
    double best = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (std::abs(row[j]) > best) {
            best = std::abs(row[j]);
            argmax = j;
        }
    }
    CHECK(argmax > 0);
    CHECK(argmax < row.size() - 1);
    for (std::size_t j = 1; j <= argmax; ++j) CHECK(std::abs(row[j]) >= std::abs(row[j - 1]));
}

TEST_CASE("transforms with a zero kernel are the identity") {
    const Grid1D g = make_grid(101);
    const ReactionDiffusionParams p{1.0, {1.0, 0.0}, 1.0};
    KernelOptions opts;
    opts.build_transform_weights = true;
    const Kernel k = solve_kernel(p, g, opts);
    Lcg64 rng(3);
    const ScalarField u = random_poly_field(g, 5, rng);
    CHECK(forward_transform(u, k, g) == u);
    const ScalarField zero(g.size(), 0.0);
    CHECK(forward_transform(zero, k, g) == zero);
}

TEST_CASE("transform composition is the identity within 1e-8") {
    const Grid1D g = make_grid(201);
    KernelOptions opts;
    opts.build_transform_weights = true;
    const Kernel k = solve_kernel(kUnstable, g, opts);
    const Kernel l = solve_inverse_kernel(kUnstable, g, opts);
    Lcg64 rng(17);
    for (int s = 0; s < 10; ++s) {
        const ScalarField u = random_poly_field(g, 6, rng);
        const ScalarField w = forward_transform(u, k, g);
        const ScalarField back = inverse_transform(w, l, g);
        double m = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(back[i] - u[i]));
        CHECK(m <= 1e-8);
    }
}

TEST_CASE("composition also holds for an affine coefficient") {
    const Grid1D g = make_grid(201);
    const ReactionDiffusionParams p{1.0, {-4.0, 3.0}, 1.0};
    KernelOptions opts;
    opts.build_transform_weights = true;
    const Kernel k = solve_kernel(p, g, opts);
    const Kernel l = solve_inverse_kernel(p, g, opts);
    Lcg64 rng(23);
    const ScalarField u = random_poly_field(g, 6, rng);
    const ScalarField back = inverse_transform(forward_transform(u, k, g), l, g);
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(back[i] - u[i]));
    CHECK(m <= 1e-8);
}

TEST_CASE("transform_trajectory parallel path matches the serial reference bitwise") {
    const Grid1D g = make_grid(101);
    KernelOptions opts;
    opts.build_transform_weights = true;
    const Kernel k = solve_kernel({1.0, {-3.0, 0.0}, 1.0}, g, opts);
    Trajectory traj(g);
    Lcg64 rng(5);
    for (int j = 0; j < 16; ++j) {
        ScalarField f = random_poly_field(g, 4, rng);
        f.front() = 0.0;
        traj.append(0.1 * j, f, 0.0, 0.0, 0.0);
    }
    const auto par = transform_trajectory(traj, k, TransformKind::forward, Exec::parallel);
    const auto ser = transform_trajectory(traj, k, TransformKind::forward, Exec::serial);
    REQUIRE(par.size() == ser.size());
    for (std::size_t j = 0; j < par.size(); ++j) CHECK(par[j] == ser[j]);
}

TEST_CASE("control input") {
    const Grid1D g = make_grid(201);
    const ReactionDiffusionParams stable{1.0, {1.0, 0.0}, 1.0};
    const Kernel kz = solve_kernel(stable, g);
    const ScalarField zero(g.size(), 0.0);
    CHECK(control_input(zero, kz, 0.25, g) == doctest::Approx(0.25).epsilon(1e-15));
    const ScalarField one(g.size(), 1.0);
    CHECK(control_input(one, kz, 0.0, g) == doctest::Approx(0.0).epsilon(1e-15));

    // Constant-coefficient kernel against a fine quadrature of the closed form.
    const Kernel k = kernel_closed_form_constant(-10.0, 1.0, 1.0, g, false, true);
    const int fine = 20000;
    double acc = 0.0;
    for (int m = 0; m <= fine; ++m) {
        const double y = static_cast<double>(m) / fine;
        const double w = (m == 0 || m == fine) ? 0.5 : 1.0;
        acc += w * k.eval(1.0, y);
    }
    acc /= fine;
    CHECK(control_input(one, k, 0.3, g) == doctest::Approx(0.3 + acc).epsilon(1e-5));
}

TEST_CASE("gain constants") {
    const Grid1D g = make_grid(11);
    auto fill = [&](double v) {
        std::vector<double> tri(g.size() * (g.size() + 1) / 2, v);
        return Kernel(g, tri, [v](double, double) { return v; });
    };
    const Kernel k0 = fill(0.0), l0 = fill(0.0);
    const auto gz = gain_constants(k0, l0);
    CHECK(gz.C1 == 1.0);
    CHECK(gz.C0 == 1.0);

    const auto gm = gain_constants(fill(3.0), fill(2.0));
    CHECK(gm.C1 == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(gm.C0 == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("compatible initial data satisfies the feedback identity") {
    const Grid1D g = make_grid(201);
    const Kernel k = solve_kernel(kUnstable, g);
    const ScalarField u0 = make_compatible_initial(1.0, k, g);
    CHECK(u0.front() == 0.0);
    CHECK(u0.back() == 0.0);
    const double feedback = control_input(u0, k, 0.0, g);
    CHECK(std::abs(u0.back() - feedback) <= 1e-10);
}

TEST_CASE("closed loop with a = nu is damped diffusion") {
    const Grid1D g = make_grid(101);
    const ReactionDiffusionParams p{1.0, {1.0, 0.0}, 1.0};
    const Kernel k = solve_kernel(p, g);
    const ScalarField u0 = InitialConditionSpec::bump(1.0).realize(g);
    const auto traj = simulate_closed_loop(p, u0, 0.0, k, SignalSpec::zero(),
                                           ForcingSpec::zero(), 0.5, 1e-3, g);
    double prev = 1e300;
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        const double sup = lp_norm(ScalarField(traj.field(j).begin(), traj.field(j).end()),
                                   g, inf_order);
        CHECK(sup <= prev + 1e-14);
        prev = sup;
    }
}

TEST_CASE("closed loop rejects incompatible initial data") {
    const Grid1D g = make_grid(101);
    const Kernel k = solve_kernel(kUnstable, g);
    const ScalarField bad = InitialConditionSpec::bump(1.0).realize(g);
    CHECK_THROWS_AS(simulate_closed_loop(kUnstable, bad, 0.0, k, SignalSpec::zero(),
                                         ForcingSpec::zero(), 0.1, 1e-3, g),
                    std::invalid_argument);
}

TEST_CASE("eigenvalue certificates via power iteration") {
    const Grid1D g = make_grid(201);
    const double lam_open = largest_eigenvalue(kUnstable, g, false);
    const double lam_target = largest_eigenvalue(kUnstable, g, true);
    // Analytic discrete values: -4 mu/h^2 sin^2(pi h/2) - a.
    const double lap = -4.0 / (g.h * g.h) * std::pow(std::sin(pi * g.h / 2.0), 2);
    CHECK(lam_open == doctest::Approx(lap + 10.0).epsilon(1e-6));
    CHECK(lam_target == doctest::Approx(lap - 1.0).epsilon(1e-6));
    CHECK(lam_open > 0.0);
    CHECK(lam_target < 0.0);
}

TEST_CASE("open loop diverges for the unstable coefficient") {
    const Grid1D g = make_grid(101);
    CHECK_THROWS_AS(simulate_open_loop(kUnstable, InitialConditionSpec::bump(1.0),
                                       SignalSpec::zero(), ForcingSpec::zero(), 400.0, 0.01,
                                       g),
                    DivergenceError);
}

TEST_CASE("target split degeneracies and decay") {
    const Grid1D g = make_grid(101);
    const ReactionDiffusionParams p{1.0, {-10.0, 0.0}, 1.0};
    SUBCASE("no disturbances: g stays zero") {
        const ScalarField w0 = InitialConditionSpec::bump(1.0).realize(g);
        const auto ts = simulate_target_split(p, w0, SignalSpec::zero(), ForcingSpec::zero(),
                                              0.5, 1e-3, g);
        for (std::size_t j = 0; j < ts.g.samples(); ++j) {
            for (double v : ts.g.field(j)) CHECK(v == 0.0);
        }
        // sup-norm decay envelope e^{-nu t} with 1% headroom.
        const double h0 = max_abs(w0);
        for (std::size_t j = 0; j < ts.h.samples(); ++j) {
            double sup = 0.0;
            for (double v : ts.h.field(j)) sup = std::max(sup, std::abs(v));
            CHECK(sup <= h0 * std::exp(-p.nu * ts.h.times()[j]) * (1.0 + 1e-2));
        }
    }
    SUBCASE("zero transformed data: h stays zero") {
        const ScalarField w0(g.size(), 0.0);
        const auto ts = simulate_target_split(p, w0, SignalSpec::ramped_cosine(0.05, 1.0),
                                              ForcingSpec::zero(), 0.2, 1e-3, g);
        for (std::size_t j = 0; j < ts.h.samples(); ++j) {
            for (double v : ts.h.field(j)) CHECK(v == 0.0);
        }
    }
}

TEST_CASE("transformed closed-loop state satisfies the target equation") {
    const Grid1D g = make_grid(201);
    KernelOptions opts;
    opts.build_transform_weights = true;
    const Kernel k = solve_kernel(kUnstable, g, opts);
    const ScalarField u0 = make_compatible_initial(1.0, k, g);
    const SignalSpec d = SignalSpec::ramped_cosine(0.05, 1.0);
    const ForcingSpec f = ForcingSpec::zero();

    auto residual_at = [&](double dt) {
        const auto traj = simulate_closed_loop(kUnstable, u0, 0.0, k, d, f, 0.5, dt, g);
        const auto w = transform_trajectory(traj, k, TransformKind::forward);
        return target_residual_sup(w, traj.times(), kUnstable, f, g);
    };
    const double r1 = residual_at(1e-3);
    const double r2 = residual_at(5e-4);
    CHECK(r1 <= 5e-2);
    CHECK(r2 <= 0.75 * r1);  // first-order-in-time residual halves under refinement
}
