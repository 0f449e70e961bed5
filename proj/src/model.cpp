#include "gdd/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gdd {

std::vector<std::string> validate_scenario(const Scenario& s)
{
    std::vector<std::string> errors;
    auto fail = [&errors](auto&&... parts) {
        std::ostringstream os;
        (os << ... << parts);
        errors.push_back(os.str());
    };

    if (s.O < 2)
        fail("O=", s.O, " < 2");
    if (s.P < 1)
        fail("P=", s.P, " < 1");
    if (s.Q < 1)
        fail("Q=", s.Q, " < 1");
    if (s.Q > s.P)
        fail("Q=", s.Q, " > P=", s.P);
    if (s.L < 0)
        fail("L=", s.L, " < 0");
    if (s.L + s.P - s.Q < s.O)
        fail("L+P-Q=", s.L + s.P - s.Q, " < O=", s.O);
    if (s.L + s.P < s.O + 1)
        fail("L+P=", s.L + s.P, " < O+1=", s.O + 1);
    if (!(s.pfa_target > 0.0 && s.pfa_target < 1.0))
        fail("pfa=", s.pfa_target, " outside (0,1)");
    for (std::size_t i = 1; i < s.snr_grid_db.size(); ++i)
        if (!(s.snr_grid_db[i] > s.snr_grid_db[i - 1]))
            fail("snr_db not strictly increasing at index ", i, " (", s.snr_grid_db[i - 1], " then ",
                 s.snr_grid_db[i], ")");
    for (double v : s.snr_grid_db)
        if (!std::isfinite(v))
            fail("snr_db contains non-finite value ", v);
    if (s.trials_calibration < 1)
        fail("trials_calibration=", s.trials_calibration, " < 1");
    if (s.trials_pd < 1)
        fail("trials_pd=", s.trials_pd, " < 1");
    return errors;
}

void require_valid(const Scenario& s)
{
    const auto errors = validate_scenario(s);
    if (errors.empty())
        return;
    std::string msg = "invalid scenario:";
    for (const auto& e : errors)
        msg += " " + e + ";";
    throw std::invalid_argument(msg);
}

SignalModel::SignalModel(ComplexVector a, ComplexMatrix c, ComplexVector alpha)
    : a_(std::move(a)), c_(std::move(c)), alpha_(std::move(alpha))
{
    if (a_.size() == 0 || a_.squaredNorm() == 0.0)
        throw std::invalid_argument("SignalModel: steering vector is zero");
    if (alpha_.size() != c_.rows())
        throw std::invalid_argument("SignalModel: alpha length must equal rows of C");
    proj_ = projector(c_);
    row_map_ = c_.adjoint() * gram_inv_sqrt(c_);
    row_energy_ = (alpha_.adjoint() * c_ * c_.adjoint() * alpha_)(0, 0).real();
}

ComplexMatrix SignalModel::signal(cplx theta) const
{
    const ComplexMatrix row = alpha_.adjoint() * c_; // 1×P
    return theta * a_ * row;
}

SignalModel SignalModel::with_alpha(ComplexVector alpha) const
{
    return SignalModel(a_, c_, std::move(alpha));
}

NoiseModel::NoiseModel(ComplexMatrix r) : r_(std::move(r)), factor_([this] {
    if (!is_hermitian(r_, 1e-12))
        throw std::invalid_argument("NoiseModel: covariance is not Hermitian");
    return HermitianFactor(r_);
}())
{
}

NoiseModel NoiseModel::exponential(int channels, double coeff)
{
    if (channels < 1)
        throw std::invalid_argument("NoiseModel::exponential: channels < 1");
    if (!(std::abs(coeff) < 1.0))
        throw std::invalid_argument("NoiseModel::exponential: |coeff| must be < 1");
    ComplexMatrix r(channels, channels);
    for (int i = 0; i < channels; ++i)
        for (int j = 0; j < channels; ++j)
            r(i, j) = std::pow(coeff, std::abs(i - j));
    return NoiseModel(std::move(r));
}

NoiseModel NoiseModel::identity(int channels)
{
    return NoiseModel(ComplexMatrix::Identity(channels, channels));
}

double NoiseModel::whitened_energy(const ComplexVector& a) const
{
    return factor_.whiten(a).squaredNorm();
}

ComplexMatrix NoiseModel::sample(Index cols, Rng& rng) const
{
    return sample_colored_gaussian(factor_.lower(), cols, rng);
}

double snr_of_theta(cplx theta, const SignalModel& m, const NoiseModel& n)
{
    return std::norm(theta) * m.row_energy() * n.whitened_energy(m.steering());
}

cplx snr_to_theta(double rho, const SignalModel& m, const NoiseModel& n)
{
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("snr_to_theta: rho must be finite and >= 0");
    if (m.channels() != n.channels())
        throw std::invalid_argument("snr_to_theta: steering vector and covariance sizes differ");
    const double gain = m.row_energy() * n.whitened_energy(m.steering());
    if (!(gain > 0.0))
        throw std::invalid_argument("snr_to_theta: zero signal gain (alpha or a is zero)");
    return cplx(std::sqrt(rho / gain), 0.0);
}

SignalModel default_signal_model(const Scenario& s, double spatial_freq)
{
    require_valid(s);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    ComplexVector a(s.O);
    for (int k = 0; k < s.O; ++k)
        a(k) = std::polar(1.0, two_pi * spatial_freq * k);

    ComplexMatrix c(s.Q, s.P);
    const double norm = 1.0 / std::sqrt(static_cast<double>(s.P));
    for (int q = 0; q < s.Q; ++q)
        for (int p = 0; p < s.P; ++p)
            c(q, p) = std::polar(norm, -two_pi * static_cast<double>((q * p) % s.P) / s.P);

    ComplexVector alpha = ComplexVector::Constant(s.Q, cplx(1.0 / std::sqrt(static_cast<double>(s.Q)), 0.0));
    return SignalModel(std::move(a), std::move(c), std::move(alpha));
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace gdd
