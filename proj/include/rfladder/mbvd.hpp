#pragma once

#include <complex>

#include "rfladder/errors.hpp"
#include "rfladder/network.hpp"
#include "rfladder/sweep.hpp"

namespace rfladder {

/// Element values of one MBVD resonator: static capacitance c0 in parallel
/// with the motional branch (rm, lm, cm), the whole core behind series
/// routing parasitics rs and ls.
struct MbvdParams {
    double c0{0.0};  // static capacitance, F
    double rm{0.0};  // motional resistance, ohm
    double lm{0.0};  // motional inductance, H
    double cm{0.0};  // motional capacitance, F
    double rs{0.0};  // series routing resistance, ohm
    double ls{0.0};  // series routing inductance, H

    /// Throws InvalidSpec when c0, cm, lm are not strictly positive or any
    /// resistance/parasitic is negative or non-finite.
    void validate() const;
};

/// Designer-facing resonator description.
struct ResonatorSpec {
    double fs{0.0};  // series resonance, Hz
    double k2{0.0};  // electromechanical coupling, fraction in (0, 1)
    double q{0.0};   // quality factor
    double c0{0.0};  // static capacitance, F
    double rs{0.0};  // ohm
    double ls{0.0};  // H

    void validate() const;
};

struct ResonancePair {
    double fs_hz{0.0};
    double fp_hz{0.0};
};

/// Element values from (fs, k2, q, c0):
///   cm = c0 * 8 k2 / pi^2,  lm = 1 / ((2 pi fs)^2 cm),  rm = 2 pi fs lm / q.
MbvdParams mbvd_from_spec(const ResonatorSpec& spec);

/// One-port admittance at f:
///   Y_core = j w c0 + 1 / (rm + j w lm + 1/(j w cm)),
///   Y      = 1 / (rs + j w ls + 1/Y_core).
/// Evaluated in a form that stays finite through the motional short; an
/// exactly lossless pole on the evaluation frequency yields +infinity.
Complex admittance(const MbvdParams& p, double f_hz);

/// 1 / admittance, evaluated so the motional-branch antiresonance does not
/// pass through an intermediate infinity. Exactly lossless antiresonance on
/// the evaluation frequency yields +infinity.
Complex impedance(const MbvdParams& p, double f_hz);

/// Lossless analytic resonances:
///   fs = 1 / (2 pi sqrt(lm cm)),  fp = fs sqrt(1 + cm/c0).
/// rs and ls are deliberately excluded; use extract_fs_fp_from_trace for
/// loaded, trace-level values.
ResonancePair resonance_frequencies(const MbvdParams& p);

/// Electromechanical coupling from resonance frequencies:
///   k2 = pi^2/8 * (fp^2/fs^2 - 1).
double k2_from_frequencies(double fs_hz, double fp_hz);

/// Quality factor 2 pi fs lm / rm with fs from resonance_frequencies.
/// Returns +infinity for rm == 0 (lossless), which is a valid outcome.
double q_from_params(const MbvdParams& p);

/// Locate fs (max |Y|) and fp (min |Y| above fs) on a sampled admittance
/// trace, refined by three-point parabolic interpolation on log|Y|. The
/// sweep must carry a "Y" trace with at least 5 points.
ResonancePair extract_fs_fp_from_trace(const FrequencySweep& sweep);

/// Same extraction on raw vectors (frequencies strictly increasing).
ResonancePair extract_fs_fp_from_trace(const Eigen::VectorXd& f_hz,
                                       const Eigen::VectorXcd& y_s);

}  // namespace rfladder
