#pragma once

#include <map>
#include <string>

#include <Eigen/Core>

#include "rfladder/errors.hpp"

namespace rfladder {

/// Linear frequency grid, endpoints included.
struct FrequencyGrid {
    double f_start_hz{0.0};
    double f_stop_hz{0.0};
    Eigen::Index n_points{0};

    void validate() const;

    /// The grid as a strictly increasing vector in Hz.
    Eigen::VectorXd frequencies() const;
};

/// Ordered frequency points with named complex response traces
/// ("S11", "S21", "S12", "S22", "Y"). Every trace has one entry per point.
class FrequencySweep {
public:
    FrequencySweep() = default;
    explicit FrequencySweep(Eigen::VectorXd frequencies_hz);

    const Eigen::VectorXd& frequencies() const { return freq_; }
    Eigen::Index size() const { return freq_.size(); }

    void set_trace(const std::string& name, Eigen::VectorXcd values);
    bool has_trace(const std::string& name) const;
    const Eigen::VectorXcd& trace(const std::string& name) const;
    const std::map<std::string, Eigen::VectorXcd>& traces() const { return traces_; }

private:
    Eigen::VectorXd freq_;
    std::map<std::string, Eigen::VectorXcd> traces_;
};

}  // namespace rfladder
