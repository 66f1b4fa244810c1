#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdeiss/bounds.hpp"
#include "pdeiss/norms.hpp"
#include "pdeiss/random_fields.hpp"
#include "pdeiss/rng.hpp"

using namespace pdeiss;
using namespace pdeiss::bounds;

namespace {

constexpr double pi = std::numbers::pi;

// A hand-built trajectory with prescribed fields and histories.
Trajectory fabricate(const Grid1D& g, const std::vector<double>& times,
                     const std::vector<ScalarField>& fields,
                     const std::vector<double>& boundary,
                     const std::vector<double>& fsup, const std::vector<double>& fl2) {
    Trajectory t(g);
    for (std::size_t j = 0; j < times.size(); ++j) {
        t.append(times[j], fields[j], boundary[j], fsup[j], fl2[j]);
    }
    return t;
}

}  // namespace

TEST_CASE("theorem-1 evaluator arithmetic") {
    const Grid1D g = make_grid(5);
    const ScalarField u0(g.size(), 1.0);   // ||u0||^2 = 1
    const ScalarField u1(g.size(), 0.5);
    const auto traj = fabricate(g, {0.0, 1.0}, {u0, u1}, {0.0, 0.3}, {0.0, 0.2}, {0.0, 0.1});
    const burgers::BurgersParams p{2.0, 1.0};
    const auto rep = evaluate_theorem1(traj, 1.0, p);
    REQUIRE(rep.records.size() == 2);
    // t = 0: rhs = 2 ||u0||^2, lhs = ||u0||^2, margin = ||u0||^2.
    CHECK(rep.records[0].lhs == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rep.records[0].rhs == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(rep.records[0].margin == doctest::Approx(1.0).epsilon(1e-12));
    // t = 1: rhs = 2 e^{-2} + 4 (0.3)^2 + (128/4)(0.2)^2.
    const double rhs1 = 2.0 * std::exp(-2.0) + 4.0 * 0.09 + 32.0 * 0.04;
    CHECK(rep.records[1].rhs == doctest::Approx(rhs1).epsilon(1e-13));
    CHECK(rep.records[1].lhs == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(rep.name == "theorem1");
    CHECK(rep.satisfied);
}

TEST_CASE("theorem-2 evaluator arithmetic and eps validation") {
    const Grid1D g = make_grid(5);
    const ScalarField u0(g.size(), 1.0);
    const ScalarField u1(g.size(), 0.5);
    const auto traj = fabricate(g, {0.0, 1.0}, {u0, u1}, {0.0, 0.3}, {0.0, 0.2}, {0.0, 0.1});
    const burgers::BurgersParams p{1.0, 1.0};
    CHECK_THROWS_AS(evaluate_theorem2(traj, 1.0, p, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_theorem2(traj, 1.0, p, 0.0), std::invalid_argument);

    const auto rep = evaluate_theorem2(traj, 1.0, p, 0.5);
    // rhs(1) = 2 e^{-(mu-eps)} + 2 (0.3)^2 + (2/eps) * 0.1.
    const double rhs1 = 2.0 * std::exp(-0.5) + 2.0 * 0.09 + 4.0 * 0.1;
    CHECK(rep.records[1].rhs == doctest::Approx(rhs1).epsilon(1e-13));

    // With f = 0 the rhs reduces to the boundary-only form.
    const auto traj0 = fabricate(g, {0.0, 1.0}, {u0, u1}, {0.0, 0.3}, {0.0, 0.0}, {0.0, 0.0});
    const auto rep0 = evaluate_theorem2(traj0, 1.0, p, 0.5);
    CHECK(rep0.records[1].rhs ==
          doctest::Approx(2.0 * std::exp(-0.5) + 2.0 * 0.09).epsilon(1e-13));
}

TEST_CASE("sup-norm bound evaluators use interior nodes and running maxima") {
    const Grid1D g = make_grid(5);
    ScalarField f0(g.size(), 0.0);
    ScalarField f1{0.0, 0.2, -0.4, 0.1, 0.9};  // boundary 0.9 excluded from lhs
    ScalarField f2{0.0, 0.1, 0.05, 0.0, 0.2};
    const auto traj =
        fabricate(g, {0.0, 1.0, 2.0}, {f0, f1, f2}, {0.0, 0.9, 0.2}, {0.0, 0.0, 0.0},
                  {0.0, 0.0, 0.0});
    const burgers::BurgersParams p{1.0, 1.0};
    const auto rep = evaluate_lemma6(traj, p);
    CHECK(rep.name == "lemma6");
    CHECK(rep.records[1].lhs == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(rep.records[2].lhs == doctest::Approx(0.4).epsilon(1e-14));  // running max
    CHECK(rep.records[1].rhs == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(rep.records[2].rhs == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(rep.satisfied);

    // lemma4 adds the forcing gain to the rhs.
    const auto traj_f =
        fabricate(g, {0.0, 1.0}, {f0, f1}, {0.0, 0.9}, {0.0, 0.5}, {0.0, 0.0});
    const auto rep4 = evaluate_lemma4(traj_f, p);
    CHECK(rep4.records[1].rhs ==
          doctest::Approx(0.9 + 4.0 * std::sqrt(2.0) * 0.5).epsilon(1e-14));
}

TEST_CASE("admissibility arithmetic") {
    const burgers::BurgersParams p{1.0, 1.0};
    SUBCASE("zero disturbances pass") {
        const auto a = admissibility_theorem1(SignalSpec::zero(), ForcingSpec::zero(), p,
                                              inf_order);
        CHECK(a.value == 0.0);
        CHECK(a.pass);
    }
    SUBCASE("canonical smallness value") {
        const auto a = admissibility_theorem1(
            SignalSpec::ramped_cosine(0.1, 1.0),
            ForcingSpec::separable(0.05, ForcingShape::sine, 1, ForcingProfile::sin_squared,
                                   1.0),
            p, inf_order);
        CHECK(a.value == doctest::Approx(0.2 + 4.0 * std::sqrt(2.0) * 0.05).epsilon(1e-12));
        CHECK(a.pass);
    }
    SUBCASE("large boundary disturbance fails") {
        const auto a = admissibility_theorem1(SignalSpec::ramped_cosine(0.5, 1.0),
                                              ForcingSpec::zero(), p, inf_order);
        CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(a.pass);
    }
}

TEST_CASE("lemma-5 and lemma-7 evaluators") {
    const Grid1D g = make_grid(5);
    const ScalarField v0(g.size(), 1.0);
    const ScalarField v1(g.size(), 0.1);
    const auto traj = fabricate(g, {0.0, 1.0}, {v0, v1}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.2});
    const burgers::BurgersParams p{1.0, 1.0};
    const auto r5 = evaluate_lemma5(traj, 1.0, p);
    CHECK(r5.records[1].rhs == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    const auto r7 = evaluate_lemma7(traj, 1.0, p, 0.5);
    CHECK(r7.records[1].rhs == doctest::Approx(std::exp(-0.5) + 0.4).epsilon(1e-13));
}

TEST_CASE("rhs is monotone under scaling the disturbance histories") {
    const Grid1D g = make_grid(5);
    const ScalarField z(g.size(), 0.0);
    const std::vector<double> times{0.0, 0.5, 1.0};
    const std::vector<ScalarField> fields{z, z, z};
    const auto small = fabricate(g, times, fields, {0.0, 0.1, 0.2}, {0.0, 0.05, 0.05},
                                 {0.0, 0.01, 0.02});
    const auto big = fabricate(g, times, fields, {0.0, 0.2, 0.4}, {0.0, 0.1, 0.1},
                               {0.0, 0.02, 0.04});
    const burgers::BurgersParams p{1.0, 1.0};
    const auto rs = evaluate_theorem1(small, 0.3, p);
    const auto rb = evaluate_theorem1(big, 0.3, p);
    for (std::size_t j = 0; j < rs.records.size(); ++j) {
        CHECK(rb.records[j].rhs >= rs.records[j].rhs);
    }
    const auto rs2 = evaluate_theorem2(small, 0.3, p, 0.5);
    const auto rb2 = evaluate_theorem2(big, 0.3, p, 0.5);
    for (std::size_t j = 0; j < rs2.records.size(); ++j) {
        CHECK(rb2.records[j].rhs >= rs2.records[j].rhs);
    }
}

TEST_CASE("level-set profile") {
    const Grid1D g = make_grid(201);
    SUBCASE("zero field has empty super-level sets") {
        const ScalarField z(g.size(), 0.0);
        const auto traj = fabricate(g, {0.0}, {z}, {0.0}, {0.0}, {0.0});
        const auto prof = level_set_profile(traj, {0.1});
        CHECK(prof.phi[0] == 0.0);
    }
    SUBCASE("positive sine mode fills the interior at level zero") {
        const ScalarField s = sample(g, [](double x) { return std::sin(pi * x); });
        const auto traj = fabricate(g, {0.0}, {s}, {0.0}, {0.0}, {0.0});
        const auto prof = level_set_profile(traj, {0.0});
        // All n-2 interior nodes are positive: measure h (n-2) = 1 - h,
        // within one cell of the nominal 1 - 2h.
        CHECK(prof.phi[0] == doctest::Approx(1.0 - g.h).epsilon(1e-13));
        CHECK(std::abs(prof.phi[0] - (1.0 - 2.0 * g.h)) <= g.h * (1.0 + 1e-12));
    }
    SUBCASE("phi is nonincreasing in the level") {
        Lcg64 rng(9);
        const ScalarField f = random_trig_field(g, 5, rng);
        const auto traj = fabricate(g, {0.0}, {f}, {0.0}, {0.0}, {0.0});
        const auto prof = level_set_profile(traj, {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0});
        for (std::size_t l = 1; l < prof.phi.size(); ++l) {
            CHECK(prof.phi[l] <= prof.phi[l - 1]);
        }
        CHECK(prof.phi.front() <= 1.0);
        CHECK(prof.phi.back() >= 0.0);
    }
    SUBCASE("levels must increase") {
        const ScalarField z(g.size(), 0.0);
        const auto traj = fabricate(g, {0.0}, {z}, {0.0}, {0.0}, {0.0});
        CHECK_THROWS_AS(level_set_profile(traj, {0.5, 0.2}), std::invalid_argument);
    }
}

TEST_CASE("level-set energy link") {
    const Grid1D g = make_grid(101);
    SUBCASE("constant field algebra") {
        const ScalarField c(g.size(), 2.0);
        const auto traj = fabricate(g, {0.0}, {c}, {0.0}, {0.0}, {0.0});
        // I_k = (2-k)^2 for k < 2; |A_h| = 1 - 2h for h < 2.
        const auto m = check_chebyshev_link(traj, 0.5, 1.0);
        CHECK(m.rhs == doctest::Approx(2.25).epsilon(1e-13));
        CHECK(m.lhs == doctest::Approx(0.25 * (1.0 - g.h)).epsilon(1e-13));
        CHECK(m.satisfied);
    }
    SUBCASE("zero field") {
        const ScalarField z(g.size(), 0.0);
        const auto traj = fabricate(g, {0.0}, {z}, {0.0}, {0.0}, {0.0});
        const auto m = check_chebyshev_link(traj, 0.0, 0.5);
        CHECK(m.margin == 0.0);
        CHECK(m.satisfied);
    }
    SUBCASE("invalid level pair") {
        const ScalarField z(g.size(), 0.0);
        const auto traj = fabricate(g, {0.0}, {z}, {0.0}, {0.0}, {0.0});
        CHECK_THROWS_AS(check_chebyshev_link(traj, 0.5, 0.5), std::invalid_argument);
    }
    SUBCASE("random trajectories and levels stay above -1e-10") {
        Lcg64 rng(77);
        for (int s = 0; s < 100; ++s) {
            std::vector<ScalarField> fields;
            std::vector<double> times, b, fs, fl;
            for (int j = 0; j < 4; ++j) {
                fields.push_back(random_trig_field(g, 6, rng));
                times.push_back(j * 0.25);
                b.push_back(0.0);
                fs.push_back(0.0);
                fl.push_back(0.0);
            }
            const auto traj = fabricate(g, times, fields, b, fs, fl);
            const double k = 4.0 * rng.next_symmetric();
            const double hl = k + 0.01 + 2.0 * rng.next_uniform();
            CHECK(check_chebyshev_link(traj, k, hl).margin >= -1e-10);
        }
    }
}

TEST_CASE("lyapunov decay evaluator arithmetic") {
    const Grid1D g = make_grid(101);
    const ScalarField h0 = sample(g, [](double x) { return std::sin(pi * x); });
    ScalarField h1(h0);
    for (double& v : h1) v *= 0.1;
    const auto traj = fabricate(g, {0.0, 1.0}, {h0, h1}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    const backstepping::ReactionDiffusionParams p{2.0, {0.0, 0.0}, 3.0};
    const auto rep = lyapunov_lp_decay(traj, p, 1);
    CHECK(rep.relative);
    // p = 1: rate 2 (nu + 2 mu) = 2 (3 + 4) = 14.
    CHECK(rep.records[1].rhs ==
          doctest::Approx(rep.records[0].lhs * std::exp(-14.0)).epsilon(1e-12));

    // sup-norm decay report uses e^{-nu t}.
    const auto sup = sup_norm_decay(traj, p);
    CHECK(sup.records[1].rhs == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("history kernels: parallel equals serial bitwise") {
    const Grid1D g = make_grid(101);
    Lcg64 rng(13);
    std::vector<ScalarField> fields;
    std::vector<double> times, b, fs, fl;
    for (int j = 0; j < 37; ++j) {
        fields.push_back(random_trig_field(g, 6, rng));
        times.push_back(0.1 * j);
        b.push_back(rng.next_symmetric());
        fs.push_back(static_cast<double>(j));
        fl.push_back(static_cast<double>(j));
    }
    const auto traj = fabricate(g, times, fields, b, fs, fl);
    CHECK(l2_squared_history(traj, Exec::parallel) == l2_squared_history(traj, Exec::serial));
    CHECK(sup_history(traj, true, Exec::parallel) == sup_history(traj, true, Exec::serial));
    CHECK(lp_pow_history(traj, 16, Exec::parallel) == lp_pow_history(traj, 16, Exec::serial));
    CHECK(excess_energy_history(traj, 0.2, Exec::parallel) ==
          excess_energy_history(traj, 0.2, Exec::serial));
    const auto pp = level_set_profile(traj, {0.0, 0.5}, Exec::parallel);
    const auto ps = level_set_profile(traj, {0.0, 0.5}, Exec::serial);
    CHECK(pp.phi == ps.phi);
}
