#include "pdeiss/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdeiss/norms.hpp"
#include "pdeiss/rng.hpp"

namespace pdeiss {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> seeded_coefficients(double amplitude, int terms, std::uint64_t seed) {
    if (terms < 1) throw std::invalid_argument("fourier_random: terms must be >= 1");
    Lcg64 rng(seed);
    std::vector<double> c(static_cast<std::size_t>(terms));
    for (int j = 1; j <= terms; ++j) {
        c[static_cast<std::size_t>(j - 1)] =
            amplitude * rng.next_symmetric() / (static_cast<double>(j) * j);
    }
    return c;
}

// sup of (1 - cos s) for s in [0, S]; 2 once S reaches pi.
double ramp_factor(double S) {
    if (S >= pi) return 2.0;
    return 1.0 - std::cos(S);
}

double profile_value(ForcingProfile p, double omega, double t) {
    switch (p) {
        case ForcingProfile::sin_squared: {
            const double s = std::sin(omega * t);
            return s * s;
        }
        case ForcingProfile::exp_saturating:
            return 1.0 - std::exp(-t);
    }
    return 0.0;
}

double profile_sup(ForcingProfile p, double omega, double horizon) {
    switch (p) {
        case ForcingProfile::sin_squared: {
            const double S = std::abs(omega) * horizon;
            if (std::isinf(horizon) || S >= 0.5 * pi) return 1.0;
            const double s = std::sin(S);
            return s * s;
        }
        case ForcingProfile::exp_saturating:
            if (std::isinf(horizon)) return 1.0;
            return 1.0 - std::exp(-horizon);
    }
    return 0.0;
}

double shape_value(ForcingShape s, int mode, double x) {
    switch (s) {
        case ForcingShape::sine:
            return std::sin(static_cast<double>(mode) * pi * x);
        case ForcingShape::bump3: {
            const double a = x * (1.0 - x);
            return a * a * a;
        }
    }
    return 0.0;
}

double shape_sup(ForcingShape s) {
    return s == ForcingShape::sine ? 1.0 : 1.0 / 64.0;
}

}  // namespace

SignalSpec SignalSpec::zero() { return {}; }

SignalSpec SignalSpec::ramped_cosine(double amplitude, double omega) {
    SignalSpec s;
    s.family = SignalFamily::ramped_cosine;
    s.amplitude = amplitude;
    s.omega = omega;
    return s;
}

SignalSpec SignalSpec::smooth_step(double amplitude) {
    SignalSpec s;
    s.family = SignalFamily::smooth_step;
    s.amplitude = amplitude;
    return s;
}

SignalSpec SignalSpec::fourier_random(double amplitude, double omega0, int terms,
                                      std::uint64_t seed) {
    SignalSpec s;
    s.family = SignalFamily::fourier_random;
    s.amplitude = amplitude;
    s.omega = omega0;
    s.terms = terms;
    s.seed = seed;
    s.coeffs = seeded_coefficients(amplitude, terms, seed);
    return s;
}

double SignalSpec::value(double t) const {
    switch (family) {
        case SignalFamily::zero:
            return 0.0;
        case SignalFamily::ramped_cosine:
            return amplitude * (1.0 - std::cos(omega * t));
        case SignalFamily::smooth_step: {
            const double t3 = t * t * t;
            return amplitude * t3 / (1.0 + t3);
        }
        case SignalFamily::fourier_random: {
            double d = 0.0;
            for (int j = 1; j <= terms; ++j) {
                d += coeffs[static_cast<std::size_t>(j - 1)] *
                     (1.0 - std::cos(static_cast<double>(j) * omega * t));
            }
            return d;
        }
    }
    return 0.0;
}

double SignalSpec::derivative_at_zero() const {
    // d'(t): A w sin(wt); 3A t^2/(1+t^3)^2; sum c_j j w sin(j w t) -- all 0 at t=0.
    return 0.0;
}

double SignalSpec::sup_abs(double horizon) const {
    switch (family) {
        case SignalFamily::zero:
            return 0.0;
        case SignalFamily::ramped_cosine:
            if (std::isinf(horizon)) return 2.0 * std::abs(amplitude);
            return std::abs(amplitude) * ramp_factor(std::abs(omega) * horizon);
        case SignalFamily::smooth_step: {
            if (std::isinf(horizon)) return std::abs(amplitude);
            const double t3 = horizon * horizon * horizon;
            return std::abs(amplitude) * t3 / (1.0 + t3);
        }
        case SignalFamily::fourier_random: {
            // Periodic with period 2 pi / omega; dense sampling.
            double span = 2.0 * pi / std::abs(omega);
            if (!std::isinf(horizon)) span = std::min(span, horizon);
            constexpr int samples = 10000;
            double m = 0.0;
            for (int i = 0; i <= samples; ++i) {
                const double t = span * static_cast<double>(i) / samples;
                m = std::max(m, std::abs(value(t)));
            }
            return m;
        }
    }
    return 0.0;
}

ForcingSpec ForcingSpec::zero() { return {}; }

ForcingSpec ForcingSpec::separable(double amplitude, ForcingShape shape, int mode,
                                   ForcingProfile profile, double omega) {
    if (mode < 1) throw std::invalid_argument("forcing mode must be >= 1");
    ForcingSpec f;
    f.family = ForcingFamily::separable;
    f.amplitude = amplitude;
    f.shape = shape;
    f.mode = mode;
    f.profile = profile;
    f.omega = omega;
    return f;
}

ForcingSpec ForcingSpec::fourier_random(double amplitude, double omega0, int terms,
                                        std::uint64_t seed) {
    ForcingSpec f;
    f.family = ForcingFamily::fourier_random;
    f.amplitude = amplitude;
    f.omega = omega0;
    f.terms = terms;
    f.seed = seed;
    f.coeffs = seeded_coefficients(amplitude, terms, seed);
    return f;
}

double ForcingSpec::value(double x, double t) const {
    switch (family) {
        case ForcingFamily::zero:
            return 0.0;
        case ForcingFamily::separable:
            return amplitude * shape_value(shape, mode, x) * profile_value(profile, omega, t);
        case ForcingFamily::fourier_random: {
            double f = 0.0;
            for (int j = 1; j <= terms; ++j) {
                const double q = std::sin(static_cast<double>(j) * omega * t);
                f += coeffs[static_cast<std::size_t>(j - 1)] *
                     std::sin(static_cast<double>(j) * pi * x) * q * q;
            }
            return f;
        }
    }
    return 0.0;
}

double ForcingSpec::sup_abs(double horizon) const {
    switch (family) {
        case ForcingFamily::zero:
            return 0.0;
        case ForcingFamily::separable:
            return std::abs(amplitude) * shape_sup(shape) * profile_sup(profile, omega, horizon);
        case ForcingFamily::fourier_random: {
            double span = 2.0 * pi / std::abs(omega);
            if (!std::isinf(horizon)) span = std::min(span, horizon);
            constexpr int t_samples = 10000;
            constexpr int x_samples = 256;
            double m = 0.0;
            for (int i = 0; i <= t_samples; ++i) {
                const double t = span * static_cast<double>(i) / t_samples;
                for (int k = 0; k <= x_samples; ++k) {
                    const double x = static_cast<double>(k) / x_samples;
                    m = std::max(m, std::abs(value(x, t)));
                }
            }
            return m;
        }
    }
    return 0.0;
}

double ForcingSpec::sup_bound() const {
    switch (family) {
        case ForcingFamily::zero:
            return 0.0;
        case ForcingFamily::separable:
            return std::abs(amplitude) * shape_sup(shape);
        case ForcingFamily::fourier_random: {
            double b = 0.0;
            for (double c : coeffs) b += std::abs(c);
            return b;
        }
    }
    return 0.0;
}

GriddedForcing::GriddedForcing(const ForcingSpec& spec, const Grid1D& grid)
    : spec_(spec), grid_(grid) {
    switch (spec_.family) {
        case ForcingFamily::zero:
            break;
        case ForcingFamily::separable:
            shapes_.push_back(
                sample(grid, [&](double x) { return shape_value(spec_.shape, spec_.mode, x); }));
            break;
        case ForcingFamily::fourier_random:
            for (int j = 1; j <= spec_.terms; ++j) {
                shapes_.push_back(sample(
                    grid, [&](double x) { return std::sin(static_cast<double>(j) * pi * x); }));
            }
            break;
    }
}

void GriddedForcing::eval(double t, ScalarField& out) const {
    out.assign(grid_.size(), 0.0);
    switch (spec_.family) {
        case ForcingFamily::zero:
            break;
        case ForcingFamily::separable: {
            const double q = spec_.amplitude * profile_value(spec_.profile, spec_.omega, t);
            const ScalarField& g = shapes_[0];
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = q * g[i];
            break;
        }
        case ForcingFamily::fourier_random:
            for (int j = 1; j <= spec_.terms; ++j) {
                const double s = std::sin(static_cast<double>(j) * spec_.omega * t);
                const double q = spec_.coeffs[static_cast<std::size_t>(j - 1)] * s * s;
                const ScalarField& g = shapes_[static_cast<std::size_t>(j - 1)];
                for (std::size_t i = 0; i < out.size(); ++i) out[i] += q * g[i];
            }
            break;
    }
}

InitialConditionSpec InitialConditionSpec::zero() { return {}; }

InitialConditionSpec InitialConditionSpec::bump(double amplitude) {
    return {InitialFamily::bump, amplitude};
}

InitialConditionSpec InitialConditionSpec::sine_cubed(double amplitude) {
    return {InitialFamily::sine_cubed, amplitude};
}

InitialConditionSpec InitialConditionSpec::quartic_bump(double amplitude) {
    return {InitialFamily::quartic_bump, amplitude};
}

InitialConditionSpec InitialConditionSpec::compatible_bump(double amplitude) {
    return {InitialFamily::compatible_bump, amplitude};
}

double InitialConditionSpec::value(double x) const {
    switch (family) {
        case InitialFamily::zero:
            return 0.0;
        case InitialFamily::bump: {
            const double a = x * (1.0 - x);
            return amplitude * a * a * a;
        }
        case InitialFamily::sine_cubed: {
            const double s = std::sin(pi * x);
            return amplitude * s * s * s;
        }
        case InitialFamily::quartic_bump: {
            const double a = x * (1.0 - x);
            return amplitude * a * a;
        }
        case InitialFamily::compatible_bump:
            throw std::logic_error(
                "compatible_bump depends on the backstepping kernel; "
                "use backstepping::make_compatible_initial");
    }
    return 0.0;
}

ScalarField InitialConditionSpec::realize(const Grid1D& grid) const {
    return sample(grid, [&](double x) { return value(x); });
}

double InitialConditionSpec::value_at0() const { return 0.0; }

double InitialConditionSpec::value_at1() const { return 0.0; }

double InitialConditionSpec::second_derivative_at0() const {
    // (x^2(1-x)^2)'' = 2(1-x)^2 - 8x(1-x) + 2x^2 equals 2 at x = 0.
    if (family == InitialFamily::quartic_bump) return 2.0 * amplitude;
    return 0.0;
}

double InitialConditionSpec::second_derivative_at1() const {
    if (family == InitialFamily::quartic_bump) return 2.0 * amplitude;
    return 0.0;
}

double InitialConditionSpec::derivative_at1() const { return 0.0; }

}  // namespace pdeiss
