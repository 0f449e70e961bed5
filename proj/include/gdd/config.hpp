#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gdd/montecarlo.hpp"

namespace gdd {

enum class Mode { pfa, threshold, pd, curve, validate, null_dist };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

/// Everything a run needs. Defaults reproduce the O=12, P=6, Q=3, L=11
/// scenario at PFA 1e-3 with R(k1,k2) = 0.95^|k1−k2|.
struct RunConfig {
    Scenario scenario = default_scenario();
    Mode mode = Mode::curve;
    std::vector<Detector> detectors{Detector::glrgdd, Detector::amgdd};
    double cov_coeff = 0.95;
    double spatial_freq = 0.1;
    ScmMode scm = ScmMode::augmented;
    ThresholdSource threshold_source = ThresholdSource::analytic;
    std::optional<double> eta;          // required by mode pfa
    std::int64_t null_trials = 10000;   // mode null-dist
    unsigned workers = 0;
    std::string out;                    // empty: stdout

    static Scenario default_scenario();
};

/// One problem found while parsing; line 0 means a cross-field check.
struct ConfigIssue {
    int line = 0;
    std::string key;
    std::string message;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Parse `key = value` lines; `#` starts a comment, blank lines are ignored.
/// Unknown keys, duplicate keys, malformed values and failed validation are
/// all collected and thrown together as one ConfigError.
///
/// Keys: O P Q L pfa snr_db seed trials_calibration trials_pd detector
/// cov_coeff spatial_freq scm threshold eta null_trials workers out mode.
/// snr_db accepts a comma list ("10, 14, 18") or a range "start:step:stop".
RunConfig parse_config(std::string_view text);

/// Cross-field checks (scenario invariants, mode-specific requirements).
std::vector<ConfigIssue> validate_config(const RunConfig& c);

/// Same as parse_config but reads the file at `path`.
RunConfig load_config(const std::string& path);

} // namespace gdd
