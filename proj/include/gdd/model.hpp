#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdd/linalg.hpp"

namespace gdd {

/// Problem dimensions and experiment settings.
///
/// Test data Z is O×P, training data Z_L is O×L, the signal row space has
/// dimension Q. The spatial subspace is one-dimensional (known steering
/// vector).
struct Scenario {
    int O = 12;
    int P = 6;
    int Q = 3;
    int L = 11;
    double pfa_target = 1e-3;
    std::vector<double> snr_grid_db;
    std::uint64_t seed = 1;
    std::int64_t trials_calibration = 100000;
    std::int64_t trials_pd = 10000;
};

/// Every violated invariant, each naming the offending values. Empty if valid.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Throws std::invalid_argument listing all violations.
void require_valid(const Scenario& s);

/// Signal H = θ·a·αᴴ·C with known a (O), C (Q×P) and coordinates α (Q).
///
/// The row-space quantities every detector needs are computed once here:
/// the projectors onto the row space of C and its complement, and
/// Cᴴ(CCᴴ)^(−1/2), which maps Z to Z_*.
class SignalModel {
public:
    SignalModel(ComplexVector a, ComplexMatrix c, ComplexVector alpha);

    const ComplexVector& steering() const noexcept { return a_; }
    const ComplexMatrix& row_basis() const noexcept { return c_; }
    const ComplexVector& alpha() const noexcept { return alpha_; }
    const Projectors& projectors() const noexcept { return proj_; }
    /// Cᴴ(CCᴴ)^(−1/2), P×Q.
    const ComplexMatrix& whitened_row_map() const noexcept { return row_map_; }

    Index channels() const noexcept { return a_.size(); }
    Index columns() const noexcept { return c_.cols(); }
    Index rank() const noexcept { return c_.rows(); }

    /// αᴴ·C·Cᴴ·α.
    double row_energy() const noexcept { return row_energy_; }

    /// θ·a·αᴴ·C (O×P, rank ≤ 1).
    ComplexMatrix signal(cplx theta) const;

    /// Same model with a different coordinate vector α.
    SignalModel with_alpha(ComplexVector alpha) const;

private:
    ComplexVector a_;
    ComplexMatrix c_;
    ComplexVector alpha_;
    Projectors proj_;
    ComplexMatrix row_map_;
    double row_energy_ = 0.0;
};

/// Noise covariance R (Hermitian positive definite) with lower Cholesky factor.
class NoiseModel {
public:
    explicit NoiseModel(ComplexMatrix r);

    /// R(k1,k2) = coeff^|k1−k2|.
    static NoiseModel exponential(int channels, double coeff = 0.95);
    static NoiseModel identity(int channels);

    const ComplexMatrix& covariance() const noexcept { return r_; }
    const ComplexMatrix& factor() const noexcept { return factor_.lower(); }
    Index channels() const noexcept { return r_.rows(); }

    /// aᴴR⁻¹a.
    double whitened_energy(const ComplexVector& a) const;

    /// O×cols matrix of CN(0, R) columns.
    ComplexMatrix sample(Index cols, Rng& rng) const;

private:
    ComplexMatrix r_;
    HermitianFactor factor_;
};

/// One realization: test data Z (O×P) and training data Z_L (O×L).
struct TrialData {
    ComplexMatrix Z;
    ComplexMatrix Z_L;
};

/// ρ = |θ|²·αᴴCCᴴα·aᴴR⁻¹a.
double snr_of_theta(cplx theta, const SignalModel& m, const NoiseModel& n);

/// Real nonnegative θ with snr_of_theta(θ) = rho. Throws std::invalid_argument
/// for rho < 0 or a model with zero αᴴCCᴴα·aᴴR⁻¹a.
cplx snr_to_theta(double rho, const SignalModel& m, const NoiseModel& n);

/// a_k = exp(j·2π·spatial_freq·k); C = first Q rows of the unitary P-point DFT;
/// α = ones/√Q.
SignalModel default_signal_model(const Scenario& s, double spatial_freq);

/// 10^(dB/10).
double db_to_linear(double db);

} // namespace gdd
