#include "pdeiss/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

#include "pdeiss/errors.hpp"

namespace pdeiss {

namespace {
void check_shapes(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::size_t rhs_size) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("solve_tridiagonal: empty system");
    if (lower.size() != n - 1 || upper.size() != n - 1 || rhs_size != n) {
        throw std::invalid_argument("solve_tridiagonal: inconsistent band sizes");
    }
}
}  // namespace

void TridiagonalWorkspace::solve(std::span<const double> lower,
                                 std::span<const double> diag,
                                 std::span<const double> upper,
                                 std::span<double> x) {
    check_shapes(lower, diag, upper, x.size());
    const std::size_t n = diag.size();
    if (c_.size() < n) {
        c_.resize(n);
        d_.resize(n);
    }
    double pivot = diag[0];
    if (pivot == 0.0) throw SingularSystemError("tridiagonal solve: zero pivot at row 0");
    c_[0] = (n > 1) ? upper[0] / pivot : 0.0;
    d_[0] = x[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i - 1] * c_[i - 1];
        if (pivot == 0.0) {
            throw SingularSystemError("tridiagonal solve: zero pivot at row " +
                                      std::to_string(i));
        }
        c_[i] = (i + 1 < n) ? upper[i] / pivot : 0.0;
        d_[i] = (x[i] - lower[i - 1] * d_[i - 1]) / pivot;
    }
    x[n - 1] = d_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d_[i] - c_[i] * x[i + 1];
}

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    std::vector<double> x(rhs.begin(), rhs.end());
    TridiagonalWorkspace ws(diag.size());
    ws.solve(lower, diag, upper, x);
    return x;
}

}  // namespace pdeiss
