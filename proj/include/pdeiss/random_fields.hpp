#pragma once

// Seeded random field families used by the property suites (and the
// check-inequalities subcommand). Coefficients are uniform in [-1,1].

#include <cmath>
#include <numbers>

#include "pdeiss/grid.hpp"
#include "pdeiss/rng.hpp"

namespace pdeiss {

/// sum_{m=0..degree} a_m cos(m pi x) + b_m sin(m pi x).
inline ScalarField random_trig_field(const Grid1D& grid, int degree, Lcg64& rng) {
    std::vector<double> a(static_cast<std::size_t>(degree) + 1);
    std::vector<double> b(static_cast<std::size_t>(degree) + 1);
    for (int m = 0; m <= degree; ++m) {
        a[static_cast<std::size_t>(m)] = rng.next_symmetric();
        b[static_cast<std::size_t>(m)] = rng.next_symmetric();
    }
    return sample(grid, [&](double x) {
        double v = 0.0;
        for (int m = 0; m <= degree; ++m) {
            const double arg = static_cast<double>(m) * std::numbers::pi * x;
            v += a[static_cast<std::size_t>(m)] * std::cos(arg) +
                 b[static_cast<std::size_t>(m)] * std::sin(arg);
        }
        return v;
    });
}

/// sum_{m=1..degree} b_m sin(m pi x); vanishes at both ends by construction.
inline ScalarField random_sine_field(const Grid1D& grid, int degree, Lcg64& rng) {
    std::vector<double> b(static_cast<std::size_t>(degree));
    for (int m = 0; m < degree; ++m) b[static_cast<std::size_t>(m)] = rng.next_symmetric();
    return sample(grid, [&](double x) {
        double v = 0.0;
        for (int m = 1; m <= degree; ++m) {
            v += b[static_cast<std::size_t>(m - 1)] *
                 std::sin(static_cast<double>(m) * std::numbers::pi * x);
        }
        return v;
    });
}

/// Polynomial sum_{k=0..degree} c_k x^k; smooth with moderate derivatives,
/// used by the transform-composition checks.
inline ScalarField random_poly_field(const Grid1D& grid, int degree, Lcg64& rng) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) c[static_cast<std::size_t>(k)] = rng.next_symmetric();
    return sample(grid, [&](double x) {
        double v = 0.0;
        for (int k = degree; k >= 0; --k) v = v * x + c[static_cast<std::size_t>(k)];
        return v;
    });
}

}  // namespace pdeiss
