#include "rfladder/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rfladder/network.hpp"
#include "rfladder/optim.hpp"

namespace rfladder {

namespace {

constexpr double kPi = std::numbers::pi;

// Exact lossless poles that land on a grid point evaluate to an infinite
// element value; a huge finite substitute keeps the cascade well defined
// (its effect on S is below 1e-100).
constexpr double kElementClamp = 1e120;

Complex clamp_element(Complex v) {
    const double mag = std::abs(v);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || !std::isfinite(mag)) {
        return Complex(kElementClamp, 0.0);
    }
    if (mag > kElementClamp) {
        return v * (kElementClamp / mag);
    }
    return v;
}

Abcd stage_abcd(const LadderStage& stage, double f_hz) {
    if (stage.orientation == Orientation::Series) {
        return abcd_series(clamp_element(impedance(stage.resonator, f_hz)));
    }
    return abcd_shunt(clamp_element(admittance(stage.resonator, f_hz)));
}

}  // namespace

void LadderTopology::validate() const {
    if (stages.empty()) {
        throw InvalidOrder("ladder requires at least one stage");
    }
    if (stages.size() >= 2) {
        const bool has_series = std::any_of(stages.begin(), stages.end(), [](const LadderStage& s) {
            return s.orientation == Orientation::Series;
        });
        const bool has_shunt = std::any_of(stages.begin(), stages.end(), [](const LadderStage& s) {
            return s.orientation == Orientation::Shunt;
        });
        if (!has_series || !has_shunt) {
            throw InvalidOrder("ladders of order >= 2 need both series and shunt stages");
        }
    }
    for (const LadderStage& s : stages) {
        s.resonator.validate();
    }
}

LadderTopology synthesize(const SynthesisInputs& in) {
    if (in.order < 2) {
        throw InvalidOrder("ladder synthesis requires order >= 2");
    }
    const double detune = std::sqrt(1.0 + 8.0 * in.k2 / (kPi * kPi));

    ResonatorSpec series_spec{in.fs_series_hz, in.k2, in.q, in.c0_series_f, in.rs_ohm, in.ls_h};
    ResonatorSpec shunt_spec{in.fs_series_hz / detune, in.k2, in.q, in.c0_shunt_f, in.rs_ohm,
                             in.ls_h};
    series_spec.validate();
    shunt_spec.validate();

    const MbvdParams series_params = mbvd_from_spec(series_spec);
    const MbvdParams shunt_params = mbvd_from_spec(shunt_spec);

    LadderTopology topology;
    topology.stages.reserve(static_cast<size_t>(in.order));
    const bool series_first = (in.variant == TopologyVariant::SeriesFirst);
    for (int i = 0; i < in.order; ++i) {
        const bool series = ((i % 2 == 0) == series_first);
        topology.stages.push_back(
            {series ? Orientation::Series : Orientation::Shunt, series ? series_params : shunt_params});
    }
    topology.validate();
    return topology;
}

FrequencySweep sweep(const LadderTopology& topology, const FrequencyGrid& grid, double z0) {
    topology.validate();
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
        throw InvalidReference("sweep requires z0 > 0");
    }
    const Eigen::VectorXd f = grid.frequencies();
    const Eigen::Index n = f.size();

    Eigen::VectorXcd s11(n), s21(n), s12(n), s22(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Abcd acc;
        for (const LadderStage& stage : topology.stages) {
            acc = acc * stage_abcd(stage, f[i]);
        }
        try {
            const SParams2 s = abcd_to_s(acc, z0);
            s11[i] = s.s11;
            s21[i] = s.s21;
            s12[i] = s.s12;
            s22[i] = s.s22;
        } catch (const SingularNetwork&) {
            throw SingularNetwork("ladder is singular at " + std::to_string(f[i]) + " Hz");
        }
    }

    FrequencySweep result(f);
    result.set_trace("S11", std::move(s11));
    result.set_trace("S21", std::move(s21));
    result.set_trace("S12", std::move(s12));
    result.set_trace("S22", std::move(s22));
    return result;
}

OptimizeC0Result optimize_c0(const SynthesisInputs& base, const C0Range& series_range,
                             const C0Range& shunt_range, const FrequencyGrid& grid, double z0,
                             int coarse_per_axis, double bandpass_floor_db) {
    for (const C0Range& r : {series_range, shunt_range}) {
        if (!(r.min_f > 0.0) || !(r.max_f >= r.min_f) || !std::isfinite(r.max_f)) {
            throw InvalidSpec("c0 ranges must be positive and ordered");
        }
    }
    if (coarse_per_axis < 1) {
        throw InvalidSpec("coarse scan needs at least one point per axis");
    }
    grid.validate();

    const auto metrics_at = [&](double c0_series, double c0_shunt) {
        SynthesisInputs in = base;
        in.c0_series_f = c0_series;
        in.c0_shunt_f = c0_shunt;
        return filter_metrics(sweep(synthesize(in), grid, z0));
    };

    const bool degenerate =
        series_range.min_f == series_range.max_f && shunt_range.min_f == shunt_range.max_f;
    if (degenerate) {
        OptimizeC0Result result;
        result.c0_series_f = series_range.min_f;
        result.c0_shunt_f = shunt_range.min_f;
        result.metrics = metrics_at(series_range.min_f, shunt_range.min_f);
        return result;
    }

    const auto evaluate = [&](double c0_series, double c0_shunt) -> double {
        try {
            const FilterMetrics m = metrics_at(c0_series, c0_shunt);
            if (m.lo_clipped || m.hi_clipped ||
                std::min(m.rejection_lo_db, m.rejection_hi_db) < bandpass_floor_db) {
                return std::numeric_limits<double>::infinity();
            }
            return m.il_db;
        } catch (const NoPassband&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const auto log_axis = [&](const C0Range& r) {
        const Eigen::Index count = (r.max_f > r.min_f) ? coarse_per_axis : 1;
        return Eigen::VectorXd::LinSpaced(count, std::log10(r.min_f), std::log10(r.max_f)).eval();
    };
    const Eigen::VectorXd series_axis = log_axis(series_range);
    const Eigen::VectorXd shunt_axis = log_axis(shunt_range);

    // Coarse scan; ties broken toward smaller c0_series, then c0_shunt,
    // which the row-major order with strict improvement provides.
    double best_il = std::numeric_limits<double>::infinity();
    double best_ls = series_axis[0];
    double best_lp = shunt_axis[0];
    for (Eigen::Index i = 0; i < series_axis.size(); ++i) {
        for (Eigen::Index j = 0; j < shunt_axis.size(); ++j) {
            const double il = evaluate(std::pow(10.0, series_axis[i]), std::pow(10.0, shunt_axis[j]));
            if (il < best_il) {
                best_il = il;
                best_ls = series_axis[i];
                best_lp = shunt_axis[j];
            }
        }
    }
    if (!std::isfinite(best_il)) {
        throw NoPassband("no (c0_series, c0_shunt) in range produces a passband");
    }

    Eigen::Vector2d lo(std::log10(series_range.min_f), std::log10(shunt_range.min_f));
    Eigen::Vector2d hi(std::log10(series_range.max_f), std::log10(shunt_range.max_f));
    const Eigen::Vector2d extent = hi - lo;

    if (extent.maxCoeff() > 0.0) {
        NelderMeadOptions opts;
        opts.max_iterations = 400;
        opts.lower_bounds = lo;
        opts.upper_bounds = hi;
        // Converged when the simplex spans < 0.1% of each searched range.
        opts.x_tol = (1e-3 * extent).cwiseMax(1e-12);
        opts.initial_step = (extent / std::max(coarse_per_axis - 1, 1)).cwiseMax(1e-6);
        const auto objective = [&](const Eigen::VectorXd& x) {
            return evaluate(std::pow(10.0, x[0]), std::pow(10.0, x[1]));
        };
        const NelderMeadResult refined =
            nelder_mead(objective, Eigen::Vector2d(best_ls, best_lp), opts);
        if (refined.f < best_il) {
            best_il = refined.f;
            best_ls = refined.x[0];
            best_lp = refined.x[1];
        }
    }

    OptimizeC0Result result;
    result.c0_series_f = std::pow(10.0, best_ls);
    result.c0_shunt_f = std::pow(10.0, best_lp);
    result.metrics = metrics_at(result.c0_series_f, result.c0_shunt_f);
    return result;
}

}  // namespace rfladder
