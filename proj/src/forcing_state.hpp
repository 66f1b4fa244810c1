#pragma once

// Per-step forcing bookkeeping shared by the Burgers and reaction-diffusion
// marches: grid samples of f plus the running sup / integrated-L^2 histories.
// Usage per step: eval_next(t_next, dt), read f_now and f_next, then commit().

#include <algorithm>
#include <cmath>

#include "pdeiss/grid.hpp"
#include "pdeiss/norms.hpp"
#include "pdeiss/signals.hpp"

namespace pdeiss::detail {

struct ForcingState {
    GriddedForcing forcing;
    ScalarField f_now;
    ScalarField f_next;
    double sup = 0.0;
    double l2_int = 0.0;
    double l2_now = 0.0;

    ForcingState(const ForcingSpec& spec, const Grid1D& grid) : forcing(spec, grid) {
        forcing.eval(0.0, f_now);
        f_next.assign(grid.size(), 0.0);
        sup = max_abs(f_now);
        const double l2 = l2_norm(f_now, grid);
        l2_now = l2 * l2;
    }

    void eval_next(double t_next, double dt, const Grid1D& grid) {
        forcing.eval(t_next, f_next);
        sup = std::max(sup, max_abs(f_next));
        const double l2 = l2_norm(f_next, grid);
        const double l2_next = l2 * l2;
        l2_int += 0.5 * dt * (l2_now + l2_next);
        l2_now = l2_next;
    }

    void commit() { f_now.swap(f_next); }
};

}  // namespace pdeiss::detail
