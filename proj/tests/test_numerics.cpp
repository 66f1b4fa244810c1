#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdeiss/errors.hpp"
#include "pdeiss/grid.hpp"
#include "pdeiss/norms.hpp"
#include "pdeiss/random_fields.hpp"
#include "pdeiss/rng.hpp"
#include "pdeiss/tridiagonal.hpp"
#include "pdeiss/trajectory.hpp"

using namespace pdeiss;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("make_grid spacing and preconditions") {
    CHECK(make_grid(3).h == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(make_grid(101).h == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(make_grid(3).h * 2.0 == 1.0);
    CHECK(make_grid(101).h * 100.0 == 1.0);
    CHECK_THROWS_AS(make_grid(2), std::invalid_argument);
}

TEST_CASE("l2_norm against analytic integrals") {
    const Grid1D g = make_grid(1001);
    const ScalarField ones(g.size(), 1.0);
    CHECK(l2_norm(ones, g) == doctest::Approx(1.0).epsilon(1e-14));

    const ScalarField x = sample(g, [](double v) { return v; });
    CHECK(std::abs(l2_norm(x, g) - std::sqrt(1.0 / 3.0)) < 1e-6);

    const ScalarField zero(g.size(), 0.0);
    CHECK(l2_norm(zero, g) == 0.0);
}

TEST_CASE("lp_norm orders and sup norm") {
    const Grid1D g = make_grid(2001);
    const ScalarField two(g.size(), 2.0);
    CHECK(lp_norm(two, g, inf_order) == 2.0);
    CHECK(lp_norm(two, g, 2.0) == doctest::Approx(2.0).epsilon(1e-14));

    const ScalarField s = sample(g, [](double v) { return std::sin(pi * v); });
    CHECK(std::abs(lp_norm(s, g, 2.0) - std::sqrt(0.5)) < 1e-6);

    CHECK_THROWS_AS(lp_norm(two, g, 0.5), std::invalid_argument);
}

TEST_CASE("derivative stencils are exact through quadratics") {
    const Grid1D g = make_grid(101);
    const ScalarField lin = sample(g, [](double v) { return v; });
    const ScalarField dlin = derivative(lin, g);
    for (double v : dlin) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

    const ScalarField c(g.size(), 3.25);
    for (double v : derivative(c, g)) CHECK(v == 0.0);

    const ScalarField quad = sample(g, [](double v) { return v * v; });
    const ScalarField dquad = derivative(quad, g);
    for (int i = 0; i < g.n_nodes; ++i) {
        CHECK(std::abs(dquad[static_cast<std::size_t>(i)] - 2.0 * g.node(i)) <= 1e-10);
    }
}

TEST_CASE("tridiagonal solver on known systems") {
    SUBCASE("identity") {
        const std::vector<double> lower{0.0, 0.0}, diag{1.0, 1.0, 1.0}, upper{0.0, 0.0};
        const std::vector<double> rhs{2.0, -3.0, 7.0};
        CHECK(solve_tridiagonal(lower, diag, upper, rhs) == rhs);
    }
    SUBCASE("hand-solved 3x3") {
        const std::vector<double> lower{-1.0, -1.0}, diag{2.0, 2.0, 2.0}, upper{-1.0, -1.0};
        const std::vector<double> rhs{1.0, 1.0, 1.0};
        const auto x = solve_tridiagonal(lower, diag, upper, rhs);
        CHECK(x[0] == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(x[2] == doctest::Approx(1.5).epsilon(1e-14));
    }
    SUBCASE("zero pivot") {
        const std::vector<double> lower{0.0}, diag{0.0, 1.0}, upper{0.0};
        const std::vector<double> rhs{1.0, 1.0};
        CHECK_THROWS_AS(solve_tridiagonal(lower, diag, upper, rhs), SingularSystemError);
    }
}

TEST_CASE("norm homogeneity and order comparison properties") {
    const Grid1D g = make_grid(301);
    Lcg64 rng(7);
    for (int s = 0; s < 50; ++s) {
        const ScalarField f = random_trig_field(g, 6, rng);
        const double c = 10.0 * rng.next_symmetric();
        ScalarField cf(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) cf[i] = c * f[i];
        CHECK(l2_norm(cf, g) ==
              doctest::Approx(std::abs(c) * l2_norm(f, g)).epsilon(1e-13));

        // On the unit interval the trapezoid p-norm never exceeds the sup norm.
        const double sup = lp_norm(f, g, inf_order);
        for (double p : {1.0, 2.0, 4.0, 8.0}) {
            CHECK(lp_norm(f, g, p) <= sup * (1.0 + 1e-13));
        }
    }
}

TEST_CASE("tridiagonal residual property on random dominant systems") {
    Lcg64 rng(42);
    for (int s = 0; s < 100; ++s) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_uniform() * 40);
        std::vector<double> lower(n - 1), diag(n), upper(n - 1), rhs(n);
        for (std::size_t i = 0; i < n - 1; ++i) {
            lower[i] = rng.next_symmetric();
            upper[i] = rng.next_symmetric();
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double off = (i > 0 ? std::abs(lower[i - 1]) : 0.0) +
                               (i < n - 1 ? std::abs(upper[i]) : 0.0);
            const double sign = rng.next_uniform() < 0.5 ? -1.0 : 1.0;
            diag[i] = sign * (off + 0.5 + rng.next_uniform());
            rhs[i] = 5.0 * rng.next_symmetric();
        }
        const auto x = solve_tridiagonal(lower, diag, upper, rhs);
        double max_res = 0.0, max_rhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ax = diag[i] * x[i];
            if (i > 0) ax += lower[i - 1] * x[i - 1];
            if (i < n - 1) ax += upper[i] * x[i + 1];
            max_res = std::max(max_res, std::abs(ax - rhs[i]));
            max_rhs = std::max(max_rhs, std::abs(rhs[i]));
        }
        CHECK(max_res <= 1e-12 * std::max(1.0, max_rhs));
    }
}

TEST_CASE("trajectory invariants") {
    const Grid1D g = make_grid(5);
    Trajectory traj(g);
    const ScalarField f(g.size(), 0.0);
    traj.append(0.0, f, 0.0, 0.0, 0.0);
    traj.append(0.5, f, 0.1, 0.2, 0.3);
    traj.append(1.0, f, -0.1, 0.2, 0.4);
    CHECK_NOTHROW(traj.validate());
    CHECK(traj.samples() == 3);
    CHECK(traj.field(1).size() == g.size());

    Trajectory bad(g);
    bad.append(0.0, f, 0.0, 0.5, 0.0);
    bad.append(0.5, f, 0.0, 0.4, 0.0);  // forcing sup decreased
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
