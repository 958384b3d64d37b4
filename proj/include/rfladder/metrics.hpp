#pragma once

#include <optional>

#include <Eigen/Core>

#include "rfladder/mbvd.hpp"
#include "rfladder/sweep.hpp"

namespace rfladder {

/// Filter figures of merit extracted from a swept response.
struct FilterMetrics {
    double fc_hz{0.0};     // midpoint of the 3-dB band
    double il_db{0.0};     // insertion loss at the passband peak
    double fbw_3db{0.0};   // (f_hi - f_lo) / fc, fraction
    double f_lo_hz{0.0};
    double f_hi_hz{0.0};
    bool lo_clipped{false};  // edge never crossed; grid endpoint reported
    bool hi_clipped{false};
    std::optional<double> rl_in_band_db;  // present when the sweep has S11
    double rejection_lo_db{0.0};  // attenuation below the peak at fc*(1 - offset)
    double rejection_hi_db{0.0};  // attenuation below the peak at fc*(1 + offset)
};

struct BandEdges {
    double f_lo_hz{0.0};
    double f_hi_hz{0.0};
    bool lo_clipped{false};
    bool hi_clipped{false};
};

/// Crossings of `level_db` at `drop_db` below its peak, nearest the peak on
/// each side, located by linear interpolation in dB. A side that never
/// crosses reports the grid endpoint with its clipped flag set.
BandEdges band_edges(const Eigen::VectorXd& f_hz, const Eigen::VectorXd& level_db,
                     double drop_db);

/// Metrics from a sweep carrying S21 (S11 optional, enables return loss).
/// Rejection is evaluated at fc*(1 +- rejection_offset), clipped to the grid.
FilterMetrics filter_metrics(const FrequencySweep& sweep, double rejection_offset = 0.5);

/// Resonator figures of merit assembled from element values.
struct ResonatorReport {
    double fs_hz{0.0};
    double fp_hz{0.0};
    double k2{0.0};
    double q{0.0};  // +infinity when rm == 0
    bool q_infinite{false};
};

ResonatorReport resonator_report(const MbvdParams& p);

}  // namespace rfladder
