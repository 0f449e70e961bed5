#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gdd/config.hpp"

namespace gdd {

/// Exit codes returned by run().
enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1, // validate found failures
    exit_config = 2,
    exit_partial = 3, // output written but some points failed
    exit_numerical = 4,
};

/// Fixed formatting for CSV numbers: 10 significant digits, '.' separator.
std::string format_number(double v);

/// Header of the curve CSV.
inline constexpr const char* curve_header = "snr_db,detector,pd_theory,pd_mc,ci_halfwidth,eta,pfa_target,seed";

/// Execute one mode. CSV goes to cfg.out (or `out` when empty); progress,
/// warnings and errors go to `log`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The invariant suite behind mode `validate`.
std::vector<CheckResult> run_validation(const RunConfig& cfg, std::ostream& log);

} // namespace gdd
