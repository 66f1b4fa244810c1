#pragma once

#include <cstddef>
#include <vector>

namespace pdeiss {

/// Uniform grid on [0,1]: nodes x_i = i*h, h = 1/(n_nodes-1).
struct Grid1D {
    int n_nodes = 0;
    double h = 0.0;

    double node(int i) const { return static_cast<double>(i) * h; }
    std::size_t size() const { return static_cast<std::size_t>(n_nodes); }
};

/// n_nodes >= 3; throws std::invalid_argument otherwise.
Grid1D make_grid(int n_nodes);

/// Nodal samples of a function of x; length must match its grid.
using ScalarField = std::vector<double>;

void require_on_grid(const ScalarField& f, const Grid1D& g);

bool all_finite(const ScalarField& f);

double max_abs(const ScalarField& f);

/// Max of |f| over interior nodes only (x in (0,1)).
double max_abs_interior(const ScalarField& f);

template <typename F>
ScalarField sample(const Grid1D& g, F&& fn) {
    ScalarField out(g.size());
    for (int i = 0; i < g.n_nodes; ++i) out[static_cast<std::size_t>(i)] = fn(g.node(i));
    return out;
}

}  // namespace pdeiss
