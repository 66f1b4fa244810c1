#include "pdeiss/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdeiss {

namespace {
void require_len(std::span<const double> f, const Grid1D& g) {
    if (f.size() != g.size()) {
        throw std::invalid_argument("field length does not match grid");
    }
}
}  // namespace

double trapezoid(std::span<const double> f, const Grid1D& g) {
    require_len(f, g);
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * g.h;
}

double l2_norm(std::span<const double> f, const Grid1D& g) {
    require_len(f, g);
    double s = 0.5 * (f.front() * f.front() + f.back() * f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i] * f[i];
    return std::sqrt(s * g.h);
}

double lp_norm(std::span<const double> f, const Grid1D& g, double p) {
    require_len(f, g);
    if (std::isinf(p) && p > 0) {
        double m = 0.0;
        for (double v : f) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) {
        throw std::invalid_argument("lp_norm: order must be >= 1 or inf_order");
    }
    double s = 0.5 * (std::pow(std::abs(f.front()), p) + std::pow(std::abs(f.back()), p));
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += std::pow(std::abs(f[i]), p);
    return std::pow(s * g.h, 1.0 / p);
}

ScalarField derivative(std::span<const double> f, const Grid1D& g) {
    require_len(f, g);
    const std::size_t n = f.size();
    ScalarField d(n);
    const double inv2h = 1.0 / (2.0 * g.h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2h;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
    return d;
}

}  // namespace pdeiss
