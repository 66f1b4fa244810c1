#include "pdeiss/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdeiss {

Grid1D make_grid(int n_nodes) {
    if (n_nodes < 3) {
        throw std::invalid_argument("make_grid: n_nodes must be >= 3, got " +
                                    std::to_string(n_nodes));
    }
    Grid1D g;
    g.n_nodes = n_nodes;
    g.h = 1.0 / static_cast<double>(n_nodes - 1);
    return g;
}

void require_on_grid(const ScalarField& f, const Grid1D& g) {
    if (f.size() != g.size()) {
        throw std::invalid_argument("field length " + std::to_string(f.size()) +
                                    " does not match grid with " +
                                    std::to_string(g.n_nodes) + " nodes");
    }
}

bool all_finite(const ScalarField& f) {
    for (double v : f) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_interior(const ScalarField& f) {
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

}  // namespace pdeiss
