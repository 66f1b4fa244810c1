#pragma once

#include <cstdint>
#include <vector>

#include "pdeiss/grid.hpp"

namespace pdeiss {

/// Boundary disturbance families d(t). Every family satisfies d(0) = 0 and
/// d'(0) = 0 exactly, so boundary data is compatible with zero initial data.
enum class SignalFamily { zero, ramped_cosine, smooth_step, fourier_random };

struct SignalSpec {
    SignalFamily family = SignalFamily::zero;
    double amplitude = 0.0;
    double omega = 1.0;
    int terms = 5;
    std::uint64_t seed = 1;
    std::vector<double> coeffs;  // fourier_random: c_j, j = 1..terms

    static SignalSpec zero();
    static SignalSpec ramped_cosine(double amplitude, double omega);
    static SignalSpec smooth_step(double amplitude);
    /// d(t) = sum_j c_j (1 - cos(j omega0 t)) with c_j = A u_j / j^2, u_j the
    /// j-th symmetric draw of Lcg64(seed).
    static SignalSpec fourier_random(double amplitude, double omega0, int terms,
                                     std::uint64_t seed);

    double value(double t) const;
    double derivative_at_zero() const;
    /// sup over [0, horizon] of |d|; horizon may be inf_order. Analytic for
    /// the closed-form families, dense sampling for fourier_random.
    double sup_abs(double horizon) const;
};

/// In-domain disturbance families f(x,t); all satisfy f(0,t) = f(1,t) = 0,
/// hence the corner conditions f(0,0) = f(1,0) = 0.
enum class ForcingFamily { zero, separable, fourier_random };
enum class ForcingShape { sine, bump3 };                    // sin(k pi x), x^3(1-x)^3
enum class ForcingProfile { sin_squared, exp_saturating };  // sin^2(w t), 1-e^{-t}

struct ForcingSpec {
    ForcingFamily family = ForcingFamily::zero;
    double amplitude = 0.0;
    ForcingShape shape = ForcingShape::sine;
    int mode = 1;
    ForcingProfile profile = ForcingProfile::sin_squared;
    double omega = 1.0;
    int terms = 5;
    std::uint64_t seed = 1;
    std::vector<double> coeffs;

    static ForcingSpec zero();
    static ForcingSpec separable(double amplitude, ForcingShape shape, int mode,
                                 ForcingProfile profile, double omega);
    /// f(x,t) = sum_j c_j sin(j pi x) sin^2(j omega0 t), c_j = A u_j / j^2.
    static ForcingSpec fourier_random(double amplitude, double omega0, int terms,
                                      std::uint64_t seed);

    double value(double x, double t) const;
    double sup_abs(double horizon) const;
    /// Declared analytic bound on sup |f| (may overestimate for fourier_random).
    double sup_bound() const;
};

/// Evaluates a ForcingSpec on a fixed grid; shape factors are precomputed so
/// the per-step cost is O(n) for separable and O(terms * n) for fourier.
class GriddedForcing {
public:
    GriddedForcing(const ForcingSpec& spec, const Grid1D& grid);
    void eval(double t, ScalarField& out) const;
    bool is_zero() const { return spec_.family == ForcingFamily::zero; }

private:
    ForcingSpec spec_;
    Grid1D grid_;
    std::vector<ScalarField> shapes_;
};

/// Initial data families; all satisfy u0(0) = u0(1) = u0''(0) = u0''(1) = 0
/// except quartic_bump, which deliberately violates u0''(0) = 0 (it equals
/// 2A) and exists to exercise the compatibility checker's failure path.
/// compatible_bump is realized by the backstepping module (it depends on the
/// synthesized kernel); its corner values are known analytically.
enum class InitialFamily { zero, bump, sine_cubed, quartic_bump, compatible_bump };

struct InitialConditionSpec {
    InitialFamily family = InitialFamily::zero;
    double amplitude = 0.0;

    static InitialConditionSpec zero();
    static InitialConditionSpec bump(double amplitude);
    static InitialConditionSpec sine_cubed(double amplitude);
    static InitialConditionSpec quartic_bump(double amplitude);
    static InitialConditionSpec compatible_bump(double amplitude);

    /// Pointwise value; throws std::logic_error for compatible_bump (use
    /// backstepping::make_compatible_initial).
    double value(double x) const;
    ScalarField realize(const Grid1D& grid) const;

    /// Analytic corner data used by the compatibility report.
    double value_at0() const;
    double value_at1() const;
    double second_derivative_at0() const;
    double second_derivative_at1() const;
    /// Analytic u0'(1); zero for every supported family.
    double derivative_at1() const;
};

}  // namespace pdeiss
