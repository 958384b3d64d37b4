#pragma once

#include <string>

#include "rfladder/fitting.hpp"
#include "rfladder/metrics.hpp"
#include "rfladder/sweep.hpp"

namespace rfladder {

/// Flat JSON report with keys fc_hz, il_db, fbw_3db, f_lo_hz, f_hi_hz,
/// rl_db, rejection_db. rl_db is null when the sweep had no S11;
/// rejection_db is the worse (smaller) of the two offset attenuations.
std::string metrics_to_json(const FilterMetrics& m);

std::string fit_report_to_json(const FitReport& r);

/// CSV with header freq_hz,s21_db,s21_deg,s11_db,s11_deg for 2-port sweeps,
/// or freq_hz,s11_db,s11_deg for 1-port sweeps. 12 significant digits,
/// '.' decimal separator, every row newline-terminated.
std::string sweep_to_csv(const FrequencySweep& sweep);

}  // namespace rfladder
