#include "pdeiss/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace pdeiss {

void Trajectory::reserve(std::size_t samples) {
    times_.reserve(samples);
    boundary_.reserve(samples);
    forcing_sup_.reserve(samples);
    forcing_l2_.reserve(samples);
    data_.reserve(samples * grid_.size());
}

void Trajectory::append(double t, std::span<const double> field, double boundary,
                        double forcing_sup, double forcing_l2) {
    if (field.size() != grid_.size()) {
        throw std::invalid_argument("Trajectory::append: field does not match grid");
    }
    times_.push_back(t);
    boundary_.push_back(boundary);
    forcing_sup_.push_back(forcing_sup);
    forcing_l2_.push_back(forcing_l2);
    data_.insert(data_.end(), field.begin(), field.end());
}

std::span<const double> Trajectory::field(std::size_t j) const {
    const std::size_t n = grid_.size();
    return std::span<const double>(data_.data() + j * n, n);
}

void Trajectory::validate() const {
    if (times_.empty()) throw std::invalid_argument("trajectory is empty");
    if (times_.front() != 0.0) throw std::invalid_argument("times must start at 0");
    for (std::size_t j = 1; j < times_.size(); ++j) {
        if (!(times_[j] > times_[j - 1])) {
            throw std::invalid_argument("times must be strictly increasing");
        }
        if (forcing_sup_[j] < forcing_sup_[j - 1] || forcing_l2_[j] < forcing_l2_[j - 1]) {
            throw std::invalid_argument("forcing histories must be nondecreasing");
        }
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw std::invalid_argument("trajectory holds non-finite value");
    }
}

}  // namespace pdeiss
