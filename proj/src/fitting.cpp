#include "rfladder/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rfladder/optim.hpp"

namespace rfladder {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWeightEpsilon = 1e-6;  // siemens; floors magnitude weights

// Positive parameters are searched in natural-log space; zeros in the
// initial point are lifted to these floors so the transform stays finite.
constexpr double kResistanceFloor = 1e-9;   // ohm
constexpr double kInductanceFloor = 1e-18;  // henry

struct FitSpace {
    bool fit_parasitics{false};
    double rs_fixed{0.0};
    double ls_fixed{0.0};

    Eigen::Index dim() const { return fit_parasitics ? 6 : 4; }

    Eigen::VectorXd pack(const MbvdParams& p) const {
        Eigen::VectorXd x(dim());
        x[0] = std::log(p.c0);
        x[1] = std::log(std::max(p.rm, kResistanceFloor));
        x[2] = std::log(p.lm);
        x[3] = std::log(p.cm);
        if (fit_parasitics) {
            x[4] = std::log(std::max(p.rs, kResistanceFloor));
            x[5] = std::log(std::max(p.ls, kInductanceFloor));
        }
        return x;
    }

    MbvdParams unpack(const Eigen::VectorXd& x) const {
        MbvdParams p;
        p.c0 = std::exp(x[0]);
        p.rm = std::exp(x[1]);
        p.lm = std::exp(x[2]);
        p.cm = std::exp(x[3]);
        p.rs = fit_parasitics ? std::exp(x[4]) : rs_fixed;
        p.ls = fit_parasitics ? std::exp(x[5]) : ls_fixed;
        return p;
    }
};

double weighted_sse(const Eigen::VectorXd& f, const Eigen::VectorXcd& y,
                    const Eigen::VectorXd& w, const MbvdParams& p) {
    double sse = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        sse += w[i] * std::norm(admittance(p, f[i]) - y[i]);
    }
    return sse;
}

double rms_residual(const Eigen::VectorXd& f, const Eigen::VectorXcd& y, const MbvdParams& p) {
    double sse = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        sse += std::norm(admittance(p, f[i]) - y[i]);
    }
    return std::sqrt(sse / static_cast<double>(f.size()));
}

}  // namespace

MbvdParams initial_guess(const FrequencySweep& sweep) {
    const Eigen::VectorXd& f = sweep.frequencies();
    const Eigen::VectorXcd& y = sweep.trace("Y");
    const ResonancePair res = extract_fs_fp_from_trace(f, y);

    // Low-frequency slope Im(Y)/w estimates c0 + cm/(1 - (f/fs)^2); the
    // extracted resonance ratio removes the motional contribution.
    const Eigen::Index n = f.size();
    const Eigen::Index decile = std::max<Eigen::Index>(1, n / 10);
    std::vector<double> slopes(static_cast<size_t>(decile));
    for (Eigen::Index i = 0; i < decile; ++i) {
        slopes[static_cast<size_t>(i)] = y[i].imag() / (2.0 * kPi * f[i]);
    }
    std::sort(slopes.begin(), slopes.end());
    const double c_low = 0.5 * (slopes[(slopes.size() - 1) / 2] + slopes[slopes.size() / 2]);

    const double ratio2 = (res.fp_hz / res.fs_hz) * (res.fp_hz / res.fs_hz);
    const double f_med = 0.5 * (f[(decile - 1) / 2] + f[decile / 2]);
    const double u = f_med / res.fs_hz;
    double motional_gain = ratio2 - 1.0;  // cm/c0 as seen at f -> 0
    if (u < 1.0) {
        motional_gain = (ratio2 - 1.0) / (1.0 - u * u);
    }
    const double c0 = c_low / (1.0 + motional_gain);
    if (!(c0 > 0.0) || !std::isfinite(c0)) {
        throw DegenerateTrace("low-frequency slope gives a nonpositive c0 estimate");
    }

    MbvdParams p;
    p.c0 = c0;
    p.cm = c0 * (ratio2 - 1.0);
    const double ws = 2.0 * kPi * res.fs_hz;
    p.lm = 1.0 / (ws * ws * p.cm);
    const double g_peak = y.real().maxCoeff();
    p.rm = (g_peak > 0.0) ? 1.0 / g_peak : 0.0;
    p.rs = 0.0;
    p.ls = 0.0;
    p.validate();
    return p;
}

FitResult fit_mbvd(const FrequencySweep& sweep, const MbvdParams& init, const FitOptions& options) {
    if (options.max_iterations < 1 || !(options.tolerance > 0.0)) {
        throw InvalidSpec("fit options require max_iterations >= 1 and tolerance > 0");
    }
    if (!(options.f_window_min_hz < options.f_window_max_hz)) {
        throw InvalidSpec("fit window requires f_window_min < f_window_max");
    }
    init.validate();
    const Eigen::VectorXd& f_all = sweep.frequencies();
    const Eigen::VectorXcd& y_all = sweep.trace("Y");

    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < f_all.size(); ++i) {
        if (f_all[i] >= options.f_window_min_hz && f_all[i] <= options.f_window_max_hz) {
            keep.push_back(i);
        }
    }
    Eigen::VectorXd f(static_cast<Eigen::Index>(keep.size()));
    Eigen::VectorXcd y(static_cast<Eigen::Index>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i) {
        f[static_cast<Eigen::Index>(i)] = f_all[keep[i]];
        y[static_cast<Eigen::Index>(i)] = y_all[keep[i]];
    }
    if (f.size() < 5) {
        throw InsufficientData("fit requires at least 5 points inside the window");
    }

    Eigen::VectorXd w(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        w[i] = (options.weighting == FitWeighting::MagnitudeNormalized)
                   ? 1.0 / std::max(std::abs(y[i]), kWeightEpsilon)
                   : 1.0;
    }

    FitSpace space;
    space.fit_parasitics = options.fit_parasitics;
    space.rs_fixed = init.rs;
    space.ls_fixed = init.ls;

    const auto objective = [&](const Eigen::VectorXd& x) {
        return weighted_sse(f, y, w, space.unpack(x));
    };

    Eigen::VectorXd x = space.pack(init);
    double f_best = objective(x);
    if (!std::isfinite(f_best)) {
        throw BadInitialPoint("objective is not finite at the initial parameters");
    }

    // Wide box in log space: rules out overflow without constraining any
    // physically sensible solution.
    NelderMeadOptions nm;
    nm.lower_bounds = x.array() - 60.0;
    nm.upper_bounds = x.array() + 60.0;
    nm.max_iterations = 250 * static_cast<int>(space.dim());
    nm.f_tol_rel = 1e-16;
    nm.x_tol = Eigen::VectorXd::Constant(space.dim(), 1e-12);

    FitResult result;
    result.converged = (f_best == 0.0);
    double step = 0.1;  // ~10% parameter perturbation for the first simplex
    for (int pass = 0; pass < options.max_iterations && !result.converged; ++pass) {
        nm.initial_step = Eigen::VectorXd::Constant(space.dim(), step);
        const NelderMeadResult r = nelder_mead(objective, x, nm);
        result.iterations = pass + 1;
        if (r.f < f_best) {
            const double decrease = (f_best - r.f) / f_best;
            x = r.x;
            f_best = r.f;
            if (decrease < options.tolerance || f_best == 0.0) {
                result.converged = true;
            }
        } else {
            result.converged = true;  // no further decrease at all
        }
        step = std::max(step * 0.25, 1e-7);
    }

    result.params = space.unpack(x);
    result.params.validate();
    result.residual_s = rms_residual(f, y, result.params);
    return result;
}

FitReport fit_report(const FitResult& result) {
    FitReport report;
    report.resonator = resonator_report(result.params);
    report.params = result.params;
    report.residual_s = result.residual_s;
    report.converged = result.converged;
    report.iterations = result.iterations;
    return report;
}

}  // namespace rfladder
