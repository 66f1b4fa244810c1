#pragma once

#include "pdeiss/grid.hpp"

namespace pdeiss::inequalities {

/// Hypothesis of the level-set iteration lemma: a non-negative decreasing
/// phi on [k0, inf) with phi(h) <= (M/(h-k))^alpha phi(k)^beta for h > k >= k0.
struct DeGiorgiHypothesis {
    double M = 1.0;        // > 0
    double alpha = 1.0;    // > 0
    double beta = 2.0;     // > 1
    double k0 = 0.0;
    double phi_k0 = 0.0;   // >= 0
};

/// Uniform two-sided report for one inequality instance.
struct InequalityMargin {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;   // rhs - lhs
    double tol = 0.0;
    bool satisfied = false;  // margin >= -tol
};

InequalityMargin make_margin(double lhs, double rhs, double tol);

/// Vanishing level of the iteration: l0 = 2^{beta/(beta-1)} M phi(k0)^{(beta-1)/alpha}.
/// Violated hypothesis invariants throw std::invalid_argument.
double degiorgi_l0(const DeGiorgiHypothesis& hyp);

/// Embedding bound on [a,b] for a C^1 function given by samples on the unit
/// grid mapped affinely onto [a,b]:
///   (int_a^b |u|^p)^{1/p} <= (b-a)^{1/p} ((2/(b-a))||u||^2 + (b-a)||u_x||^2)^{1/2}.
InequalityMargin check_embedding(const ScalarField& field, const Grid1D& grid,
                                 double a, double b, double p, double tol = 1e-6);

/// Pointwise bound u(c)^2 <= (2/(b-a))||u||^2 + (b-a)||u_x||^2 with u(c) by
/// linear interpolation; c must lie in [a,b].
InequalityMargin check_pointwise(const ScalarField& field, const Grid1D& grid,
                                 double a, double b, double c, double tol = 1e-6);

/// ||v||^2 <= (1/2)||v_x||^2 for fields vanishing at both ends (tolerance
/// 1e-12 on the boundary values).
InequalityMargin check_poincare_dirichlet(const ScalarField& field, const Grid1D& grid,
                                          double tol = 1e-6);

}  // namespace pdeiss::inequalities
