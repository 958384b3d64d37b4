#include "rfladder/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rfladder {

namespace {

constexpr double kMagFloor = 1e-300;  // keeps dB traces finite through zeros

Eigen::VectorXd magnitude_db(const Eigen::VectorXcd& trace) {
    Eigen::VectorXd db(trace.size());
    for (Eigen::Index i = 0; i < trace.size(); ++i) {
        db[i] = 20.0 * std::log10(std::max(std::abs(trace[i]), kMagFloor));
    }
    return db;
}

/// Linear interpolation of a dB trace at frequency f (clamped to the grid).
double interp_db(const Eigen::VectorXd& f_hz, const Eigen::VectorXd& level_db, double f) {
    const Eigen::Index n = f_hz.size();
    f = std::clamp(f, f_hz[0], f_hz[n - 1]);
    Eigen::Index hi = 1;
    while (hi < n - 1 && f_hz[hi] < f) {
        ++hi;
    }
    const double span = f_hz[hi] - f_hz[hi - 1];
    const double t = (f - f_hz[hi - 1]) / span;
    return level_db[hi - 1] + t * (level_db[hi] - level_db[hi - 1]);
}

}  // namespace

BandEdges band_edges(const Eigen::VectorXd& f_hz, const Eigen::VectorXd& level_db,
                     double drop_db) {
    const Eigen::Index n = f_hz.size();
    if (n < 2 || level_db.size() != n) {
        throw ArityError("band_edges requires matching trace and grid of at least 2 points");
    }
    Eigen::Index ipk = 0;
    const double peak = level_db.maxCoeff(&ipk);
    if (ipk == 0 || ipk == n - 1) {
        throw NoPassband("no interior peak in the trace");
    }
    const double threshold = peak - drop_db;

    BandEdges edges;
    Eigen::Index lo = ipk;
    while (lo > 0 && level_db[lo - 1] >= threshold) {
        --lo;
    }
    if (lo == 0) {
        edges.f_lo_hz = f_hz[0];
        edges.lo_clipped = true;
    } else {
        const double t = (threshold - level_db[lo - 1]) / (level_db[lo] - level_db[lo - 1]);
        edges.f_lo_hz = f_hz[lo - 1] + t * (f_hz[lo] - f_hz[lo - 1]);
    }

    Eigen::Index hi = ipk;
    while (hi < n - 1 && level_db[hi + 1] >= threshold) {
        ++hi;
    }
    if (hi == n - 1) {
        edges.f_hi_hz = f_hz[n - 1];
        edges.hi_clipped = true;
    } else {
        const double t = (threshold - level_db[hi + 1]) / (level_db[hi] - level_db[hi + 1]);
        edges.f_hi_hz = f_hz[hi + 1] - t * (f_hz[hi + 1] - f_hz[hi]);
    }
    return edges;
}

FilterMetrics filter_metrics(const FrequencySweep& sweep, double rejection_offset) {
    const Eigen::VectorXd& f = sweep.frequencies();
    const Eigen::VectorXcd& s21 = sweep.trace("S21");
    const Eigen::Index n = f.size();
    if (n < 3) {
        throw InsufficientData("filter metrics require at least 3 points");
    }

    Eigen::Index ipk = 0;
    const double peak = s21.cwiseAbs().maxCoeff(&ipk);
    if (!(peak > 0.0)) {
        throw NoPassband("|S21| vanishes everywhere");
    }
    if (ipk == 0 || ipk == n - 1) {
        throw NoPassband("|S21| peak sits on a grid boundary");
    }

    const Eigen::VectorXd db = magnitude_db(s21);
    const BandEdges edges = band_edges(f, db, 3.0);

    FilterMetrics m;
    m.il_db = -20.0 * std::log10(peak);
    m.f_lo_hz = edges.f_lo_hz;
    m.f_hi_hz = edges.f_hi_hz;
    m.lo_clipped = edges.lo_clipped;
    m.hi_clipped = edges.hi_clipped;
    m.fc_hz = 0.5 * (edges.f_lo_hz + edges.f_hi_hz);
    m.fbw_3db = (edges.f_hi_hz - edges.f_lo_hz) / m.fc_hz;

    if (sweep.has_trace("S11")) {
        const Eigen::VectorXcd& s11 = sweep.trace("S11");
        double worst = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (f[i] >= m.f_lo_hz && f[i] <= m.f_hi_hz) {
                worst = std::max(worst, std::abs(s11[i]));
            }
        }
        worst = std::max(worst, std::abs(s11[ipk]));  // band never excludes the peak
        m.rl_in_band_db = -20.0 * std::log10(std::max(worst, kMagFloor));
        m.rl_in_band_db = std::min(*m.rl_in_band_db, 400.0);
    }

    const double peak_db = db[ipk];
    m.rejection_lo_db = peak_db - interp_db(f, db, m.fc_hz * (1.0 - rejection_offset));
    m.rejection_hi_db = peak_db - interp_db(f, db, m.fc_hz * (1.0 + rejection_offset));
    return m;
}

ResonatorReport resonator_report(const MbvdParams& p) {
    const ResonancePair res = resonance_frequencies(p);
    ResonatorReport report;
    report.fs_hz = res.fs_hz;
    report.fp_hz = res.fp_hz;
    report.k2 = k2_from_frequencies(res.fs_hz, res.fp_hz);
    report.q = q_from_params(p);
    report.q_infinite = std::isinf(report.q);
    return report;
}

}  // namespace rfladder
