#pragma once

#include <limits>

#include "rfladder/mbvd.hpp"
#include "rfladder/metrics.hpp"
#include "rfladder/sweep.hpp"

namespace rfladder {

enum class FitWeighting { Uniform, MagnitudeNormalized };

/// Options for the least-squares MBVD fit. `max_iterations` counts outer
/// refinement passes of the simplex search; `tolerance` is the relative
/// objective decrease per pass below which the fit is declared converged.
/// The optional frequency window restricts which samples enter the
/// objective; the default covers the whole sweep.
struct FitOptions {
    int max_iterations{50};
    double tolerance{1e-10};
    FitWeighting weighting{FitWeighting::MagnitudeNormalized};
    bool fit_parasitics{false};
    double f_window_min_hz{0.0};
    double f_window_max_hz{std::numeric_limits<double>::infinity()};
};

struct FitResult {
    MbvdParams params;
    double residual_s{0.0};  // RMS complex admittance error, siemens
    bool converged{false};
    int iterations{0};
};

/// Starting point from trace features: (fs, fp) from the extrema, c0 from
/// the low-frequency Im(Y)/w slope, rm from the conductance peak.
MbvdParams initial_guess(const FrequencySweep& sweep);

/// Minimize sum_i w_i |Y_model(f_i) - Y_i|^2 over {c0, rm, lm, cm} and,
/// when fit_parasitics is set, {rs, ls}, with all parameters log-transformed
/// so returned values are strictly positive. Deterministic for fixed inputs.
FitResult fit_mbvd(const FrequencySweep& sweep, const MbvdParams& init,
                   const FitOptions& options = {});

struct FitReport {
    ResonatorReport resonator;
    MbvdParams params;
    double residual_s{0.0};
    bool converged{false};
    int iterations{0};
};

FitReport fit_report(const FitResult& result);

}  // namespace rfladder
