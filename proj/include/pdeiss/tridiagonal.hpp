#pragma once

#include <span>
#include <vector>

namespace pdeiss {

/// Thomas algorithm for A x = rhs with sub-diagonal `lower` (size n-1),
/// diagonal `diag` (size n) and super-diagonal `upper` (size n-1).
/// Intended for diagonally dominant systems; a vanishing pivot throws
/// SingularSystemError.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

/// Reusable scratch space for repeated solves of same-sized systems.
class TridiagonalWorkspace {
public:
    explicit TridiagonalWorkspace(std::size_t n) : c_(n), d_(n) {}

    /// Solves in place: x holds rhs on entry, the solution on exit.
    void solve(std::span<const double> lower, std::span<const double> diag,
               std::span<const double> upper, std::span<double> x);

private:
    std::vector<double> c_;
    std::vector<double> d_;
};

}  // namespace pdeiss
