#include "gdd/detectors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace gdd {

std::string_view to_string(Detector d) noexcept
{
    return d == Detector::glrgdd ? "glrgdd" : "amgdd";
}

namespace {

void check_shapes(const TrialData& d, const SignalModel& m)
{
    const Index o = m.channels();
    if (d.Z.rows() != o || d.Z_L.rows() != o)
        throw std::invalid_argument("detector: data rows differ from steering vector length");
    if (d.Z.cols() != m.columns())
        throw std::invalid_argument("detector: test data columns differ from C columns");
    if (d.Z_L.cols() + m.columns() - m.rank() < o)
        throw std::invalid_argument("detector: L+P-Q < O, augmented covariance is singular");
}

ComplexMatrix augmented_scm(const TrialData& d, const SignalModel& m)
{
    ComplexMatrix s = d.Z_L * d.Z_L.adjoint();
    s.noalias() += d.Z * m.projectors().complement * d.Z.adjoint();
    return s;
}

// aᴴM⁻¹Z_*Z_*ᴴM⁻¹a / aᴴM⁻¹a given u = L⁻¹a and y = L⁻¹Z_* for M = LLᴴ.
double matched_ratio(const ComplexVector& u, const ComplexMatrix& y)
{
    const ComplexVector v = y.adjoint() * u;
    return v.squaredNorm() / u.squaredNorm();
}

} // namespace

DetectorWorkspace build_workspace(const TrialData& d, const SignalModel& m)
{
    check_shapes(d, m);
    DetectorWorkspace ws;
    ws.S = d.Z_L * d.Z_L.adjoint();
    ws.S_plus = ws.S + d.Z * m.projectors().complement * d.Z.adjoint();
    ws.Z_star = d.Z * m.whitened_row_map();
    HermitianFactor check(ws.S_plus); // throws if singular
    return ws;
}

DetectorOutput evaluate(const TrialData& d, const SignalModel& m, ScmMode mode)
{
    check_shapes(d, m);
    const ComplexMatrix z_star = d.Z * m.whitened_row_map();
    const HermitianFactor factor(augmented_scm(d, m));
    const ComplexVector u = factor.whiten(m.steering());
    const ComplexMatrix y = factor.whiten(z_star);

    const Index q = z_star.cols();
    const ComplexVector v = y.adjoint() * u;
    ComplexMatrix inner = ComplexMatrix::Identity(q, q);
    inner.noalias() += y.adjoint() * y;
    const HermitianFactor inner_factor(inner);
    const double numerator = inner_factor.whiten(v).squaredNorm();
    const double denominator = u.squaredNorm();

    DetectorOutput out;
    out.t_glrgdd = std::clamp(numerator / denominator, 0.0, 1.0);
    // 1 − t = uᴴ(I + YYᴴ)⁻¹u / uᴴu is bounded away from zero for finite data.
    const double complement = denominator - numerator;
    out.t_glrgdd_prime = complement > 0.0 ? numerator / complement
                                           : std::numeric_limits<double>::infinity();

    if (mode == ScmMode::augmented) {
        out.t_amgdd = matched_ratio(u, y);
    } else {
        if (d.Z_L.cols() < m.channels())
            throw std::invalid_argument("amgdd: raw SCM mode needs L >= O");
        const HermitianFactor raw(d.Z_L * d.Z_L.adjoint());
        out.t_amgdd = matched_ratio(raw.whiten(m.steering()), raw.whiten(z_star));
    }
    return out;
}

double glrgdd(const TrialData& d, const SignalModel& m)
{
    return evaluate(d, m).t_glrgdd;
}

double glrgdd_prime(double t)
{
    if (!(t >= 0.0 && t < 1.0))
        throw std::domain_error("glrgdd_prime: statistic must lie in [0,1)");
    return t / (1.0 - t);
}

double amgdd(const TrialData& d, const SignalModel& m, ScmMode mode)
{
    return evaluate(d, m, mode).t_amgdd;
}

double decision_statistic(const DetectorOutput& out, Detector det) noexcept
{
    return det == Detector::glrgdd ? out.t_glrgdd_prime : out.t_amgdd;
}

} // namespace gdd
