#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdeiss/burgers.hpp"
#include "pdeiss/errors.hpp"
#include "pdeiss/norms.hpp"

using namespace pdeiss;
using namespace pdeiss::burgers;

namespace {

constexpr double pi = std::numbers::pi;

double sup_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

const SignalSpec kSmallD = SignalSpec::ramped_cosine(0.1, 1.0);
const ForcingSpec kSmallF =
    ForcingSpec::separable(0.05, ForcingShape::sine, 1, ForcingProfile::sin_squared, 1.0);

}  // namespace

TEST_CASE("zero data stays exactly zero") {
    const Grid1D g = make_grid(51);
    const BurgersParams p{1.0, 1.0};
    const auto traj = simulate(p, InitialConditionSpec::zero(), SignalSpec::zero(),
                               ForcingSpec::zero(), 0.05, 1e-3, g);
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        for (double v : traj.field(j)) CHECK(v == 0.0);
    }
    CHECK(traj.forcing_sup_history().back() == 0.0);
    CHECK(traj.forcing_l2_history().back() == 0.0);
}

TEST_CASE("single step at equilibrium returns zero") {
    const Grid1D g = make_grid(21);
    const ScalarField zero(g.size(), 0.0);
    const auto out = step(zero, {1.0, 1.0}, zero, zero, 0.0, 1e-4, g);
    for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("heat limit: sine eigenmode decays at rate pi^2") {
    // nu = 0 disables convection (internal testing hook).
    const Grid1D g = make_grid(201);
    const BurgersParams p{1.0, 0.0};
    const double dt = 1e-4;
    ScalarField u = sample(g, [](double x) { return std::sin(pi * x); });
    const ScalarField fzero(g.size(), 0.0);
    for (int k = 0; k < 1000; ++k) u = step(u, p, fzero, fzero, 0.0, dt, g);

    const double decay = std::exp(-pi * pi * 0.1);
    double max_rel = 0.0;
    for (int i = 0; i < g.n_nodes; ++i) {
        const double expect = decay * std::sin(pi * g.node(i));
        max_rel = std::max(max_rel, std::abs(u[static_cast<std::size_t>(i)] - expect));
    }
    CHECK(max_rel / decay < 0.01);
    CHECK(l2_norm(u, g) == doctest::Approx(decay * std::sqrt(0.5)).epsilon(0.01));
}

TEST_CASE("boundary values are imposed exactly") {
    const Grid1D g = make_grid(101);
    const BurgersParams p{1.0, 1.0};
    const auto traj = simulate(p, InitialConditionSpec::bump(1.0), kSmallD, kSmallF, 0.05,
                               1e-3, g);
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        CHECK(traj.field(j)[0] == 0.0);
        CHECK(traj.field(j)[g.size() - 1] == traj.boundary_history()[j]);
    }
}

TEST_CASE("stability limit is enforced per step") {
    const Grid1D g = make_grid(401);
    const BurgersParams p{1.0, 1.0};
    CHECK_THROWS_AS(simulate(p, InitialConditionSpec::bump(1.0), kSmallD, kSmallF, 0.1,
                             5e-3, g),
                    StabilityError);
}

TEST_CASE("incompatible data is rejected") {
    const Grid1D g = make_grid(101);
    CHECK_THROWS_AS(simulate({1.0, 1.0}, InitialConditionSpec::quartic_bump(1.0),
                             SignalSpec::zero(), ForcingSpec::zero(), 0.1, 1e-3, g),
                    std::invalid_argument);
}

TEST_CASE("splitting degenerates correctly") {
    const Grid1D g = make_grid(101);
    const BurgersParams p{1.0, 1.0};
    const double t_end = 0.05, dt = 1e-3;

    SUBCASE("no disturbances: w = 0 and v equals the full solution bitwise") {
        const auto u0 = InitialConditionSpec::bump(1.0);
        const auto full = simulate(p, u0, SignalSpec::zero(), ForcingSpec::zero(), t_end, dt, g);
        const auto st = simulate_splitting_a(p, u0, SignalSpec::zero(), ForcingSpec::zero(),
                                             t_end, dt, g);
        for (std::size_t j = 0; j < full.samples(); ++j) {
            for (double v : st.w.field(j)) CHECK(v == 0.0);
            CHECK(sup_diff(st.v.field(j), full.field(j)) == 0.0);
        }
    }
    SUBCASE("no initial data: v = 0 and w equals the full solution bitwise") {
        const auto full = simulate(p, InitialConditionSpec::zero(), kSmallD, kSmallF, t_end,
                                   dt, g);
        const auto st = simulate_splitting_a(p, InitialConditionSpec::zero(), kSmallD,
                                             kSmallF, t_end, dt, g);
        for (std::size_t j = 0; j < full.samples(); ++j) {
            for (double v : st.v.field(j)) CHECK(v == 0.0);
            CHECK(sup_diff(st.w.field(j), full.field(j)) == 0.0);
        }
    }
    SUBCASE("f = 0: splittings A and B coincide") {
        const auto u0 = InitialConditionSpec::bump(1.0);
        const auto sa = simulate_splitting_a(p, u0, kSmallD, ForcingSpec::zero(), t_end, dt, g);
        const auto sb = simulate_splitting_b(p, u0, kSmallD, ForcingSpec::zero(), t_end, dt, g);
        for (std::size_t j = 0; j < sa.w.samples(); ++j) {
            CHECK(sup_diff(sa.w.field(j), sb.w.field(j)) == 0.0);
            CHECK(sup_diff(sa.v.field(j), sb.v.field(j)) == 0.0);
        }
    }
}

TEST_CASE("splitting consistency at coarse resolution") {
    const Grid1D g = make_grid(101);
    const BurgersParams p{1.0, 1.0};
    const auto u0 = InitialConditionSpec::bump(1.0);
    const double t_end = 0.5, dt = 5e-4;
    const auto full = simulate(p, u0, kSmallD, kSmallF, t_end, dt, g);
    const auto sa = simulate_splitting_a(p, u0, kSmallD, kSmallF, t_end, dt, g);
    const auto sb = simulate_splitting_b(p, u0, kSmallD, kSmallF, t_end, dt, g);
    double err_a = 0.0, err_b = 0.0;
    for (std::size_t j = 0; j < full.samples(); ++j) {
        const auto uf = full.field(j);
        for (std::size_t i = 0; i < uf.size(); ++i) {
            err_a = std::max(err_a, std::abs(sa.w.field(j)[i] + sa.v.field(j)[i] - uf[i]));
            err_b = std::max(err_b, std::abs(sb.w.field(j)[i] + sb.v.field(j)[i] - uf[i]));
        }
    }
    CHECK(err_a < 5e-3);
    CHECK(err_b < 5e-3);
}

TEST_CASE("maximum-principle surrogate for the unforced boundary subsystem") {
    const Grid1D g = make_grid(201);
    const BurgersParams p{1.0, 1.0};
    const auto st = simulate_splitting_b(p, InitialConditionSpec::bump(1.0), kSmallD,
                                         ForcingSpec::zero(), 1.0, 2.5e-4, g);
    double interior_sup = 0.0, d_sup = 0.0;
    for (std::size_t j = 0; j < st.w.samples(); ++j) {
        const auto w = st.w.field(j);
        for (std::size_t i = 1; i + 1 < w.size(); ++i) {
            interior_sup = std::max(interior_sup, std::abs(w[i]));
        }
        d_sup = std::max(d_sup, std::abs(st.w.boundary_history()[j]));
    }
    CHECK(interior_sup <= d_sup + 1e-6);
}

TEST_CASE("trajectory histories satisfy the type invariants") {
    const Grid1D g = make_grid(101);
    const auto traj = simulate({1.0, 1.0}, InitialConditionSpec::bump(1.0), kSmallD, kSmallF,
                               0.2, 1e-3, g, {.output_stride = 5});
    CHECK_NOTHROW(traj.validate());
    CHECK(traj.times().back() == doctest::Approx(0.2).epsilon(1e-12));
}
