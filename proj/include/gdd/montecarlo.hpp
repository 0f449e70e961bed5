#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdd/analytic.hpp"
#include "gdd/detectors.hpp"
#include "gdd/model.hpp"

namespace gdd {

/// Trials are split into fixed-size chunks; chunk i of stream s always draws
/// from make_stream(seed, s, i), so results do not depend on worker count.
struct EngineOptions {
    unsigned workers = 0; // 0: hardware concurrency
    std::int64_t chunk = 1024;
    ScmMode scm = ScmMode::augmented;
};

/// Stream identifiers within a master seed.
namespace streams {
inline constexpr std::uint64_t null_calibration = 1;
inline constexpr std::uint64_t null_distribution = 2;
/// PD trials at linear SNR rho.
std::uint64_t detection(double rho) noexcept;
} // namespace streams

struct McResult {
    Detector detector = Detector::glrgdd;
    double eta_used = 0.0;
    double estimate = 0.0;
    std::int64_t trials = 0;
    double ci_halfwidth = 0.0; // 3σ binomial
    std::uint64_t seed = 0;
};

/// Empirical (1 − pfa) quantile of the null statistic plus the order
/// statistics at rank ± 3σ of the binomial rank count.
struct ThresholdEstimate {
    Detector detector = Detector::glrgdd;
    double eta = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

struct PerfPoint {
    double snr_db = 0.0;
    Detector detector = Detector::glrgdd;
    double pd_theory = 0.0;
    double pd_mc = 0.0;
    double ci_halfwidth = 0.0;
    double eta = 0.0; // threshold applied to the MC trials
};

enum class ThresholdSource { analytic, empirical };

struct SweepOptions {
    std::vector<Detector> detectors{Detector::glrgdd, Detector::amgdd};
    ThresholdSource threshold_source = ThresholdSource::analytic;
    EngineOptions engine;
    QuadratureOptions quadrature;
};

struct SweepResult {
    std::vector<PerfPoint> points;
    std::vector<std::string> failures; // one entry per point that could not be computed
};

/// Z = θ·a·αᴴ·C + V with θ = snr_to_theta(rho); V and Z_L drawn from `n`.
TrialData gen_trial(const Scenario& s, const SignalModel& m, const NoiseModel& n, double rho, Rng& rng);

/// Detector outputs of `trials` independent trials at SNR rho, in trial order.
std::vector<DetectorOutput> simulate(const Scenario& s, const SignalModel& m, const NoiseModel& n, double rho,
                                     std::int64_t trials, std::uint64_t seed, std::uint64_t stream,
                                     const EngineOptions& opts = {});

/// Null-hypothesis decision statistics (t′ for GLRGDD, t for AMGDD).
std::vector<double> null_statistics(const Scenario& s, const SignalModel& m, const NoiseModel& n, Detector det,
                                    std::int64_t trials, std::uint64_t seed, std::uint64_t stream,
                                    const EngineOptions& opts = {});

/// Threshold estimate from an arbitrary sample of null statistics.
ThresholdEstimate threshold_from_sample(std::vector<double> values, double pfa, Detector det, std::uint64_t seed);

/// Empirical threshold at s.pfa_target from `trials` null trials.
/// Throws std::invalid_argument when trials < 10/pfa_target.
ThresholdEstimate calibrate_threshold(const Scenario& s, const SignalModel& m, const NoiseModel& n, Detector det,
                                      std::int64_t trials, std::uint64_t seed, const EngineOptions& opts = {});

/// Fraction of trials at SNR rho whose statistic exceeds eta.
McResult estimate_pd(const Scenario& s, const SignalModel& m, const NoiseModel& n, Detector det, double eta,
                     double rho, std::int64_t trials, std::uint64_t seed, const EngineOptions& opts = {});

/// Theory and MC PD for every SNR in s.snr_grid_db and every requested detector.
SweepResult sweep(const Scenario& s, const SignalModel& m, const NoiseModel& n, const SweepOptions& opts = {});

} // namespace gdd
