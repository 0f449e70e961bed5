#pragma once

#include <string_view>

#include "gdd/model.hpp"

namespace gdd {

enum class Detector { glrgdd, amgdd };

std::string_view to_string(Detector d) noexcept;

/// Sample covariance used by the AMGDD.
///
/// `augmented` uses S₊ = S + Z·P⊥·Zᴴ (needs L+P−Q ≥ O) and is the form whose
/// distribution the analytic module characterizes; `raw` uses S = Z_L·Z_Lᴴ
/// and needs L ≥ O.
enum class ScmMode { augmented, raw };

struct DetectorWorkspace {
    ComplexMatrix S;      // Z_L·Z_Lᴴ
    ComplexMatrix S_plus; // S + Z·P⊥·Zᴴ
    ComplexMatrix Z_star; // Z·Cᴴ(CCᴴ)^(−1/2), O×Q
};

struct DetectorOutput {
    double t_glrgdd = 0.0;       // in [0,1)
    double t_glrgdd_prime = 0.0; // t/(1−t)
    double t_amgdd = 0.0;
};

/// Throws std::invalid_argument on shape mismatch or L+P−Q < O, and
/// FactorizationError if S₊ is not positive definite.
DetectorWorkspace build_workspace(const TrialData& d, const SignalModel& m);

/// GLRGDD in reduced form:
/// aᴴS₊⁻¹Z_*(I_Q + Z_*ᴴS₊⁻¹Z_*)⁻¹Z_*ᴴS₊⁻¹a / aᴴS₊⁻¹a.
double glrgdd(const TrialData& d, const SignalModel& m);

/// t/(1−t). Throws std::domain_error outside [0,1).
double glrgdd_prime(double t);

/// aᴴM⁻¹Z_*Z_*ᴴM⁻¹a / aᴴM⁻¹a with M = S₊ or S.
/// Throws std::invalid_argument in raw mode when L < O.
double amgdd(const TrialData& d, const SignalModel& m, ScmMode mode = ScmMode::augmented);

/// All three statistics from a single factorization of S₊ (plus one of S
/// in raw mode).
DetectorOutput evaluate(const TrialData& d, const SignalModel& m, ScmMode mode = ScmMode::augmented);

/// The statistic thresholded for `det`: t′ for GLRGDD, t for AMGDD.
double decision_statistic(const DetectorOutput& out, Detector det) noexcept;

} // namespace gdd
