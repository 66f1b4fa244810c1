#include "pdeiss/inequalities.hpp"

#include <cmath>
#include <stdexcept>

#include "pdeiss/norms.hpp"

namespace pdeiss::inequalities {

InequalityMargin make_margin(double lhs, double rhs, double tol) {
    InequalityMargin m;
    m.lhs = lhs;
    m.rhs = rhs;
    m.margin = rhs - lhs;
    m.tol = tol;
    m.satisfied = m.margin >= -tol;
    return m;
}

double degiorgi_l0(const DeGiorgiHypothesis& hyp) {
    if (!(hyp.M > 0.0) || !(hyp.alpha > 0.0) || !(hyp.beta > 1.0) || !(hyp.phi_k0 >= 0.0)) {
        throw std::invalid_argument(
            "degiorgi_l0: requires M > 0, alpha > 0, beta > 1, phi(k0) >= 0");
    }
    const double exponent = (hyp.beta - 1.0) / hyp.alpha;
    return std::pow(2.0, hyp.beta / (hyp.beta - 1.0)) * hyp.M * std::pow(hyp.phi_k0, exponent);
}

namespace {

struct UnitNorms {
    double l2_sq;    // ||field||^2 on [0,1]
    double dl2_sq;   // ||field'||^2 on [0,1]
};

// Norms of u on [a,b] reduce to unit-grid norms under the affine map
// x = a + s(b-a):  ||u||^2_{L^2(a,b)} = (b-a) ||f||^2,
//                  ||u_x||^2_{L^2(a,b)} = ||f'||^2 / (b-a),
// so the bracket (2/(b-a))||u||^2 + (b-a)||u_x||^2 = 2||f||^2 + ||f'||^2.
UnitNorms unit_norms(const ScalarField& field, const Grid1D& grid) {
    const double l2 = l2_norm(field, grid);
    const ScalarField d = derivative(field, grid);
    const double dl2 = l2_norm(d, grid);
    return {l2 * l2, dl2 * dl2};
}

void require_interval(double a, double b) {
    if (!(b > a)) throw std::invalid_argument("interval requires b > a");
}

}  // namespace

InequalityMargin check_embedding(const ScalarField& field, const Grid1D& grid,
                                 double a, double b, double p, double tol) {
    require_on_grid(field, grid);
    require_interval(a, b);
    if (!(p >= 1.0)) throw std::invalid_argument("check_embedding: p must be >= 1");
    const double len = b - a;
    const UnitNorms n = unit_norms(field, grid);

    // (int_a^b |u|^p)^{1/p} = ((b-a) int_0^1 |f|^p)^{1/p}
    const double lp_unit = lp_norm(field, grid, p);
    const double lhs = std::pow(len, 1.0 / p) * lp_unit;
    const double rhs = std::pow(len, 1.0 / p) * std::sqrt(2.0 * n.l2_sq + n.dl2_sq);
    return make_margin(lhs, rhs, tol);
}

InequalityMargin check_pointwise(const ScalarField& field, const Grid1D& grid,
                                 double a, double b, double c, double tol) {
    require_on_grid(field, grid);
    require_interval(a, b);
    if (c < a || c > b) throw std::invalid_argument("check_pointwise: c outside [a,b]");
    const UnitNorms n = unit_norms(field, grid);

    // Linear interpolation at the unit-interval preimage of c.
    const double s = (c - a) / (b - a);
    const double pos = s / grid.h;
    const int i = std::min(static_cast<int>(pos), grid.n_nodes - 2);
    const double w = pos - static_cast<double>(i);
    const double uc = (1.0 - w) * field[static_cast<std::size_t>(i)] +
                      w * field[static_cast<std::size_t>(i) + 1];

    return make_margin(uc * uc, 2.0 * n.l2_sq + n.dl2_sq, tol);
}

InequalityMargin check_poincare_dirichlet(const ScalarField& field, const Grid1D& grid,
                                          double tol) {
    require_on_grid(field, grid);
    constexpr double boundary_tol = 1e-12;
    if (std::abs(field.front()) > boundary_tol || std::abs(field.back()) > boundary_tol) {
        throw std::invalid_argument(
            "check_poincare_dirichlet: field must vanish at both ends");
    }
    const UnitNorms n = unit_norms(field, grid);
    return make_margin(n.l2_sq, 0.5 * n.dl2_sq, tol);
}

}  // namespace pdeiss::inequalities
