#pragma once

#include <limits>
#include <span>

#include "pdeiss/grid.hpp"

namespace pdeiss {

/// Distinguished order for the sup norm; lp_norm branches on it instead of
/// evaluating |u|^p with a huge exponent.
inline constexpr double inf_order = std::numeric_limits<double>::infinity();

/// Composite trapezoid of the nodal samples over [0,1].
double trapezoid(std::span<const double> f, const Grid1D& g);

/// Trapezoid approximation of (int_0^1 f^2 dx)^{1/2}.
double l2_norm(std::span<const double> f, const Grid1D& g);

/// (int_0^1 |f|^p dx)^{1/p} for finite p >= 1; max|f| for p = inf_order.
/// p < 1 throws std::invalid_argument.
double lp_norm(std::span<const double> f, const Grid1D& g, double p);

/// Second-order first derivative: central stencils inside, one-sided at the
/// ends. Exact for polynomials up to degree 2.
ScalarField derivative(std::span<const double> f, const Grid1D& g);

}  // namespace pdeiss
