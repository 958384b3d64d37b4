#include "rfladder/mbvd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rfladder {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogFloor = 1e-300;  // keeps log|Y| finite on dead traces

bool nonneg_finite(double v) {
    return std::isfinite(v) && v >= 0.0;
}

bool pos_finite(double v) {
    return std::isfinite(v) && v > 0.0;
}

/// Vertex of the parabola through (x[i-1..i+1], y[i-1..i+1]), clamped to
/// the bracketing abscissae. Handles non-uniform spacing.
double parabolic_vertex(const Eigen::VectorXd& x, const Eigen::VectorXd& y, Eigen::Index i) {
    const double d1 = x[i] - x[i - 1];
    const double d2 = x[i] - x[i + 1];
    const double g1 = y[i] - y[i - 1];
    const double g2 = y[i] - y[i + 1];
    const double num = d1 * d1 * g2 - d2 * d2 * g1;
    const double den = d1 * g2 - d2 * g1;
    if (den == 0.0) {
        return x[i];
    }
    const double v = x[i] - 0.5 * num / den;
    return std::clamp(v, x[i - 1], x[i + 1]);
}

}  // namespace

void MbvdParams::validate() const {
    if (!pos_finite(c0) || !pos_finite(cm) || !pos_finite(lm)) {
        throw InvalidSpec("MBVD element values c0, cm, lm must be positive and finite");
    }
    if (!nonneg_finite(rm) || !nonneg_finite(rs) || !nonneg_finite(ls)) {
        throw InvalidSpec("MBVD resistances and routing inductance must be non-negative");
    }
}

void ResonatorSpec::validate() const {
    if (!pos_finite(fs)) {
        throw InvalidSpec("resonator spec requires fs > 0");
    }
    if (!std::isfinite(k2) || !(k2 > 0.0) || !(k2 < 1.0)) {
        throw InvalidSpec("resonator spec requires 0 < k2 < 1");
    }
    if (!pos_finite(q)) {
        throw InvalidSpec("resonator spec requires q > 0");
    }
    if (!pos_finite(c0)) {
        throw InvalidSpec("resonator spec requires c0 > 0");
    }
    if (!nonneg_finite(rs) || !nonneg_finite(ls)) {
        throw InvalidSpec("resonator spec requires rs, ls >= 0");
    }
}

MbvdParams mbvd_from_spec(const ResonatorSpec& spec) {
    spec.validate();
    MbvdParams p;
    p.c0 = spec.c0;
    p.cm = spec.c0 * (8.0 * spec.k2 / (kPi * kPi));
    const double ws = 2.0 * kPi * spec.fs;
    p.lm = 1.0 / (ws * ws * p.cm);
    p.rm = ws * p.lm / spec.q;
    p.rs = spec.rs;
    p.ls = spec.ls;
    p.validate();
    return p;
}

Complex admittance(const MbvdParams& p, double f_hz) {
    if (!(f_hz > 0.0) || !std::isfinite(f_hz)) {
        throw InvalidFrequency("admittance requires f > 0");
    }
    const double w = 2.0 * kPi * f_hz;
    const Complex zm(p.rm, w * p.lm - 1.0 / (w * p.cm));
    // Y = (1 + j w c0 zm) / ((rs + j w ls)(1 + j w c0 zm) + zm): equal to
    // j w c0 + 1/zm behind the rs/ls branch, but finite through zm == 0.
    const Complex core = 1.0 + Complex(0.0, w * p.c0) * zm;
    const Complex denom = Complex(p.rs, w * p.ls) * core + zm;
    if (denom == 0.0) {
        return Complex(std::numeric_limits<double>::infinity(), 0.0);
    }
    return core / denom;
}

Complex impedance(const MbvdParams& p, double f_hz) {
    if (!(f_hz > 0.0) || !std::isfinite(f_hz)) {
        throw InvalidFrequency("impedance requires f > 0");
    }
    const double w = 2.0 * kPi * f_hz;
    const Complex zm(p.rm, w * p.lm - 1.0 / (w * p.cm));
    const Complex core = 1.0 + Complex(0.0, w * p.c0) * zm;
    if (core == 0.0) {
        return Complex(std::numeric_limits<double>::infinity(), 0.0);
    }
    return Complex(p.rs, w * p.ls) + zm / core;
}

ResonancePair resonance_frequencies(const MbvdParams& p) {
    p.validate();
    ResonancePair r;
    r.fs_hz = 1.0 / (2.0 * kPi * std::sqrt(p.lm * p.cm));
    r.fp_hz = r.fs_hz * std::sqrt(1.0 + p.cm / p.c0);
    return r;
}

double k2_from_frequencies(double fs_hz, double fp_hz) {
    if (!(fs_hz > 0.0) || !std::isfinite(fs_hz) || !std::isfinite(fp_hz)) {
        throw InvalidFrequency("k2 extraction requires finite fs > 0");
    }
    if (fp_hz < fs_hz) {
        throw InvalidOrdering("k2 extraction requires fp >= fs");
    }
    const double ratio = fp_hz / fs_hz;
    return kPi * kPi / 8.0 * (ratio * ratio - 1.0);
}

double q_from_params(const MbvdParams& p) {
    p.validate();
    if (p.rm == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double fs = resonance_frequencies(p).fs_hz;
    return 2.0 * kPi * fs * p.lm / p.rm;
}

ResonancePair extract_fs_fp_from_trace(const FrequencySweep& sweep) {
    return extract_fs_fp_from_trace(sweep.frequencies(), sweep.trace("Y"));
}

namespace {

/// Parabolic vertex on the log of `metric` at its argmax over [lo, hi],
/// provided the peak is interior to that window and the metric is positive
/// on the refinement triplet. Returns a negative value otherwise.
double refine_log_peak(const Eigen::VectorXd& f_hz, const Eigen::VectorXd& metric,
                       Eigen::Index lo, Eigen::Index hi) {
    Eigen::Index ipk = lo;
    for (Eigen::Index i = lo; i <= hi; ++i) {
        if (metric[i] > metric[ipk]) {
            ipk = i;
        }
    }
    if (ipk <= lo || ipk >= hi) {
        return -1.0;
    }
    if (!(metric[ipk - 1] > 0.0) || !(metric[ipk] > 0.0) || !(metric[ipk + 1] > 0.0)) {
        return -1.0;
    }
    Eigen::Vector3d logm(std::log(metric[ipk - 1]), std::log(metric[ipk]),
                         std::log(metric[ipk + 1]));
    const Eigen::Vector3d fwin = f_hz.segment(ipk - 1, 3);
    return parabolic_vertex(fwin, logm, 1);
}

/// Antiresonance from the resistance peak. Near fp the inverse resistance is
/// the parabola 1/R = A (f - f*)^2 + C whose vertex f* sits below the
/// lossless fp by C / (f* A); the corrected vertex cancels that loss bias.
/// Returns a negative value when the window has no usable interior peak.
double refine_resistance_peak(const Eigen::VectorXd& f_hz, const Eigen::VectorXd& resistance,
                              Eigen::Index lo, Eigen::Index hi) {
    if (lo >= hi) {
        return -1.0;
    }
    Eigen::Index ipk = lo;
    for (Eigen::Index i = lo; i <= hi; ++i) {
        if (resistance[i] > resistance[ipk]) {
            ipk = i;
        }
    }
    if (ipk <= lo || ipk >= hi) {
        return -1.0;
    }
    if (!(resistance[ipk - 1] > 0.0) || !(resistance[ipk] > 0.0) ||
        !(resistance[ipk + 1] > 0.0)) {
        return -1.0;
    }

    const double x1 = f_hz[ipk - 1];
    const double x2 = f_hz[ipk];
    const double x3 = f_hz[ipk + 1];
    const double y1 = 1.0 / resistance[ipk - 1];
    const double y2 = 1.0 / resistance[ipk];
    const double y3 = 1.0 / resistance[ipk + 1];
    const double d1 = (y2 - y1) / (x2 - x1);
    const double d2 = (y3 - y2) / (x3 - x2);
    const double curvature = (d2 - d1) / (x3 - x1);
    if (!(curvature > 0.0)) {
        return -1.0;
    }
    double vertex = 0.5 * (x1 + x2) - d1 / (2.0 * curvature);
    vertex = std::clamp(vertex, x1, x3);
    const double value =
        y1 + d1 * (vertex - x1) + curvature * (vertex - x1) * (vertex - x2);
    if (!(value > 0.0)) {
        return vertex;
    }
    const double shift = value / (vertex * curvature);
    if (!(std::abs(shift) <= 0.01 * vertex)) {
        return vertex;  // outside the small-loss regime the term is untrusted
    }
    return vertex + shift;
}

}  // namespace

ResonancePair extract_fs_fp_from_trace(const Eigen::VectorXd& f_hz,
                                       const Eigen::VectorXcd& y_s) {
    const Eigen::Index n = f_hz.size();
    if (n < 5) {
        throw InsufficientData("trace extraction requires at least 5 points");
    }
    if (y_s.size() != n) {
        throw ArityError("admittance trace length does not match the frequency grid");
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (!(f_hz[i] < f_hz[i + 1])) {
            throw OrderError("trace frequencies must be strictly increasing");
        }
    }

    Eigen::VectorXd logmag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        logmag[i] = std::log(std::max(std::abs(y_s[i]), kLogFloor));
    }

    Eigen::Index ipk = 0;
    logmag.maxCoeff(&ipk);
    if (ipk == 0 || ipk == n - 1) {
        throw NoResonance("no interior |Y| maximum in the trace");
    }

    // The |Y| extrema locate the resonances but are biased against the
    // analytic values by O(1/q); the conductance peak sits exactly on fs and
    // the resistance peak on fp for the lossy model, so those refine the
    // estimates whenever the trace has usable loss. Lossless traces fall
    // back to log|Y|, where the extrema are exact.
    Eigen::VectorXd conductance = y_s.real();
    double fs = refine_log_peak(f_hz, conductance, 0, n - 1);
    Eigen::Index i_fs = ipk;
    if (fs > 0.0) {
        conductance.maxCoeff(&i_fs);
        if (std::abs(f_hz[i_fs] - f_hz[ipk]) > 0.05 * f_hz[ipk]) {
            fs = -1.0;  // conductance peak unrelated to the admittance peak
            i_fs = ipk;
        }
    }
    if (!(fs > 0.0)) {
        fs = parabolic_vertex(f_hz, logmag, ipk);
        i_fs = ipk;
    }

    if (i_fs >= n - 1) {
        throw NoResonance("no frequencies above fs to locate fp");
    }
    Eigen::Index imin = i_fs + 1;
    for (Eigen::Index i = i_fs + 1; i < n; ++i) {
        if (logmag[i] < logmag[imin]) {
            imin = i;
        }
    }
    if (imin == n - 1) {
        // |Y| still falling at the end of the sweep: the window truncates
        // before the antiresonance.
        throw NoResonance("antiresonance not bracketed by the sweep");
    }

    Eigen::VectorXd resistance(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = std::norm(y_s[i]);
        resistance[i] = (norm > 0.0) ? y_s[i].real() / norm : 0.0;
    }
    double fp = refine_resistance_peak(f_hz, resistance, i_fs + 1, n - 1);
    if (!(fp > 0.0)) {
        Eigen::VectorXd neg = -logmag;
        fp = refine_log_peak(f_hz, neg.array().exp().matrix(), i_fs + 1, n - 1);
        if (!(fp > 0.0)) {
            fp = f_hz[imin];
        }
    }

    ResonancePair r;
    r.fs_hz = fs;
    r.fp_hz = fp;
    if (!(r.fp_hz > r.fs_hz)) {
        // Refinement windows of adjacent extrema may touch; fall back to the
        // grid values, which the index restriction keeps ordered.
        r.fs_hz = f_hz[i_fs];
        r.fp_hz = f_hz[imin];
        if (!(r.fp_hz > r.fs_hz)) {
            throw NoResonance("trace extrema do not bracket a resonance pair");
        }
    }
    return r;
}

}  // namespace rfladder
