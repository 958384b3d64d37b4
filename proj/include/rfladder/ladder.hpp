#pragma once

#include <vector>

#include "rfladder/mbvd.hpp"
#include "rfladder/metrics.hpp"
#include "rfladder/sweep.hpp"

namespace rfladder {

enum class Orientation { Series, Shunt };

struct LadderStage {
    Orientation orientation{Orientation::Series};
    MbvdParams resonator;
};

/// Ordered series/shunt resonator placement forming the filter two-port.
struct LadderTopology {
    std::vector<LadderStage> stages;

    void validate() const;
};

enum class TopologyVariant { SeriesFirst, ShuntFirst };

/// Inputs to ladder synthesis. Series stages resonate at fs_series_hz; shunt
/// stages are detuned down so their antiresonance lands exactly on it.
struct SynthesisInputs {
    double fs_series_hz{0.0};
    double k2{0.0};
    double q{0.0};
    double c0_series_f{0.0};
    double c0_shunt_f{0.0};
    int order{3};
    double rs_ohm{0.0};
    double ls_h{0.0};
    TopologyVariant variant{TopologyVariant::SeriesFirst};
};

/// Build an alternating ladder of `order` stages. Shunt stages get
/// fs = fs_series / sqrt(1 + 8 k2 / pi^2) so that shunt fp == series fs.
LadderTopology synthesize(const SynthesisInputs& inputs);

/// Evaluate the ladder over the grid against real z0. Produces traces
/// "S11", "S21", "S12", "S22".
FrequencySweep sweep(const LadderTopology& topology, const FrequencyGrid& grid, double z0);

/// Closed interval of static-capacitance values, farads.
struct C0Range {
    double min_f{0.0};
    double max_f{0.0};
};

struct OptimizeC0Result {
    double c0_series_f{0.0};
    double c0_shunt_f{0.0};
    FilterMetrics metrics;
};

/// Unconstrained insertion-loss minimization over c0 is degenerate: pushing
/// c0_series up and c0_shunt down detunes the ladder into a lossless through
/// with no stopband. A candidate therefore only counts as a passband when
/// its response is at least this far down at the fc*(1 +- 0.5) rejection
/// offsets (two 3-dB increments: the band must genuinely end).
inline constexpr double kDefaultBandpassFloorDb = 6.0;

/// Pick (c0_series, c0_shunt) minimizing in-band insertion loss over
/// bandpass candidates: logarithmic coarse scan (coarse_per_axis^2 points)
/// followed by local simplex refinement. Deterministic for fixed inputs.
/// The c0 fields of `base` are ignored. Throws NoPassband when no scanned
/// point yields a passband. Single-point ranges skip the search and the
/// bandpass test and report that design as-is.
OptimizeC0Result optimize_c0(const SynthesisInputs& base, const C0Range& series_range,
                             const C0Range& shunt_range, const FrequencyGrid& grid,
                             double z0, int coarse_per_axis = 16,
                             double bandpass_floor_db = kDefaultBandpassFloorDb);

}  // namespace rfladder
