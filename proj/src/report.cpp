#include "rfladder/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

namespace rfladder {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kCsvDbFloor = -400.0;

double mag_db(Complex v) {
    const double mag = std::abs(v);
    return (mag > 0.0) ? std::max(20.0 * std::log10(mag), kCsvDbFloor) : kCsvDbFloor;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string metrics_to_json(const FilterMetrics& m) {
    nlohmann::ordered_json j;
    j["fc_hz"] = m.fc_hz;
    j["il_db"] = m.il_db;
    j["fbw_3db"] = m.fbw_3db;
    j["f_lo_hz"] = m.f_lo_hz;
    j["f_hi_hz"] = m.f_hi_hz;
    if (m.rl_in_band_db) {
        j["rl_db"] = *m.rl_in_band_db;
    } else {
        j["rl_db"] = nullptr;
    }
    j["rejection_db"] = std::min(m.rejection_lo_db, m.rejection_hi_db);
    return j.dump(2) + "\n";
}

std::string fit_report_to_json(const FitReport& r) {
    nlohmann::ordered_json j;
    j["fs_hz"] = r.resonator.fs_hz;
    j["fp_hz"] = r.resonator.fp_hz;
    j["k2"] = r.resonator.k2;
    if (r.resonator.q_infinite) {
        j["q"] = nullptr;
    } else {
        j["q"] = r.resonator.q;
    }
    j["q_infinite"] = r.resonator.q_infinite;
    j["params"] = {{"c0_f", r.params.c0}, {"rm_ohm", r.params.rm}, {"lm_h", r.params.lm},
                   {"cm_f", r.params.cm}, {"rs_ohm", r.params.rs}, {"ls_h", r.params.ls}};
    j["residual_s"] = r.residual_s;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    return j.dump(2) + "\n";
}

std::string sweep_to_csv(const FrequencySweep& sweep) {
    const bool two_port = sweep.has_trace("S21");
    const Eigen::VectorXcd& s11 = sweep.trace("S11");
    std::string out;
    if (two_port) {
        const Eigen::VectorXcd& s21 = sweep.trace("S21");
        out += "freq_hz,s21_db,s21_deg,s11_db,s11_deg\n";
        for (Eigen::Index i = 0; i < sweep.size(); ++i) {
            out += num(sweep.frequencies()[i]) + "," + num(mag_db(s21[i])) + "," +
                   num(std::arg(s21[i]) * kRadToDeg) + "," + num(mag_db(s11[i])) + "," +
                   num(std::arg(s11[i]) * kRadToDeg) + "\n";
        }
    } else {
        out += "freq_hz,s11_db,s11_deg\n";
        for (Eigen::Index i = 0; i < sweep.size(); ++i) {
            out += num(sweep.frequencies()[i]) + "," + num(mag_db(s11[i])) + "," +
                   num(std::arg(s11[i]) * kRadToDeg) + "\n";
        }
    }
    return out;
}

}  // namespace rfladder
