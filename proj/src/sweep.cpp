#include "rfladder/sweep.hpp"

#include <cmath>
#include <utility>

namespace rfladder {

void FrequencyGrid::validate() const {
    if (!(f_start_hz > 0.0) || !std::isfinite(f_start_hz) || !std::isfinite(f_stop_hz)) {
        throw InvalidSpec("frequency grid start must be positive and finite");
    }
    if (!(f_start_hz < f_stop_hz)) {
        throw InvalidSpec("frequency grid requires f_start < f_stop");
    }
    if (n_points < 2) {
        throw InvalidSpec("frequency grid requires at least 2 points");
    }
}

Eigen::VectorXd FrequencyGrid::frequencies() const {
    validate();
    return Eigen::VectorXd::LinSpaced(n_points, f_start_hz, f_stop_hz);
}

FrequencySweep::FrequencySweep(Eigen::VectorXd frequencies_hz) : freq_(std::move(frequencies_hz)) {
    for (Eigen::Index i = 0; i + 1 < freq_.size(); ++i) {
        if (!(freq_[i] < freq_[i + 1])) {
            throw OrderError("sweep frequencies must be strictly increasing");
        }
    }
}

void FrequencySweep::set_trace(const std::string& name, Eigen::VectorXcd values) {
    if (values.size() != freq_.size()) {
        throw ArityError("trace \"" + name + "\" length does not match the frequency grid");
    }
    traces_[name] = std::move(values);
}

bool FrequencySweep::has_trace(const std::string& name) const {
    return traces_.count(name) != 0;
}

const Eigen::VectorXcd& FrequencySweep::trace(const std::string& name) const {
    auto it = traces_.find(name);
    if (it == traces_.end()) {
        throw MissingTrace("sweep has no trace \"" + name + "\"");
    }
    return it->second;
}

}  // namespace rfladder
