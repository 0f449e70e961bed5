#include "gdd/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gdd/special.hpp"

namespace gdd {

DistParams DistParams::from(const Scenario& s, double rho)
{
    DistParams p{s.O, s.P, s.Q, s.L, rho};
    p.validate();
    return p;
}

void DistParams::validate() const
{
    std::ostringstream os;
    if (O < 2)
        os << " O=" << O << " < 2;";
    if (Q < 1 || Q > P)
        os << " Q=" << Q << " outside [1, P=" << P << "];";
    if (kmax() < 0)
        os << " L+P-Q=" << L + P - Q << " < O=" << O << ";";
    if (!(rho >= 0.0))
        os << " rho=" << rho << " < 0;";
    if (!os.str().empty())
        throw std::invalid_argument("invalid distribution parameters:" + os.str());
}

namespace {

// β^a·(1−β)^b / B(a+1, b+1) for integer exponents a, b ≥ 0.
double beta_density(double beta, int a, int b)
{
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::domain_error("beta density: argument outside [0,1]");
    if ((a > 0 && beta == 0.0) || (b > 0 && beta == 1.0))
        return 0.0;
    double log_pdf = -log_beta(a + 1, b + 1);
    if (a > 0)
        log_pdf += a * std::log(beta);
    if (b > 0)
        log_pdf += b * std::log1p(-beta);
    return std::exp(log_pdf);
}

void check_eta(double eta, const char* where)
{
    if (!(eta >= 0.0))
        throw std::domain_error(std::string(where) + ": threshold must be >= 0");
}

} // namespace

double cdf_p1(double eta, double noncentrality, const DistParams& p)
{
    p.validate();
    check_eta(eta, "cdf_p1");
    if (!(noncentrality >= 0.0))
        throw std::domain_error("cdf_p1: noncentrality must be >= 0");
    if (eta == 0.0)
        return 0.0;
    if (std::isinf(eta))
        return 1.0;

    const int n1 = p.n1();
    const double log_eta = std::log(eta);
    const double log_1p_eta = std::log1p(eta);
    const double shifted = noncentrality / (1.0 + eta);
    CompensatedSum sum;
    for (int k = 0; k <= p.kmax(); ++k) {
        const int j = k + p.Q;
        const double log_weight = log_binom(n1, j) + j * log_eta - n1 * log_1p_eta;
        sum.add(std::exp(log_weight) * inc_gamma(k, shifted));
    }
    const double v = sum.value();
    constexpr double slack = 1e-12;
    if (v < -slack || v > 1.0 + slack || !std::isfinite(v))
        throw std::runtime_error("cdf_p1: value escaped [0,1]");
    return std::clamp(v, 0.0, 1.0);
}

double pdf_beta_g(double beta, const DistParams& p)
{
    p.validate();
    return beta_density(beta, p.L + p.P - p.O, p.O - 2);
}

double pdf_beta_a(double beta, const DistParams& p)
{
    p.validate();
    return beta_density(beta, p.L + p.P - p.Q - p.O + 1, p.O - 2);
}

double pfa_glrgdd(double eta, const DistParams& p)
{
    p.validate();
    check_eta(eta, "pfa_glrgdd");
    if (eta == 0.0)
        return 1.0;
    if (std::isinf(eta))
        return 0.0;
    // 1 − Σ_{j=Q..N1} C(N1,j)xʲ(1−x)^(N1−j) with x = η/(1+η), summed over
    // the complementary range j < Q to avoid cancellation at small PFA.
    const int n1 = p.n1();
    const double log_x = std::log(eta) - std::log1p(eta);
    const double log_1mx = -std::log1p(eta);
    CompensatedSum sum;
    for (int j = 0; j < p.Q; ++j)
        sum.add(std::exp(log_binom(n1, j) + j * log_x + (n1 - j) * log_1mx));
    return std::clamp(sum.value(), 0.0, 1.0);
}

double pd_glrgdd(double eta, const DistParams& p, const QuadratureOptions& q)
{
    p.validate();
    check_eta(eta, "pd_glrgdd");
    const double value = integrate_unit(
        [&](double beta) {
            return (1.0 - cdf_p1(eta, p.rho * beta, p)) * pdf_beta_g(beta, p);
        },
        q);
    return std::clamp(value, 0.0, 1.0);
}

double pd_amgdd(double eta, const DistParams& p, const QuadratureOptions& q)
{
    p.validate();
    check_eta(eta, "pd_amgdd");
    const double value = integrate_unit(
        [&](double beta) {
            return (1.0 - cdf_p1(eta * beta, p.rho * beta, p)) * pdf_beta_a(beta, p);
        },
        q);
    return std::clamp(value, 0.0, 1.0);
}

double pfa_amgdd(double eta, const DistParams& p, const QuadratureOptions& q)
{
    DistParams null = p;
    null.rho = 0.0;
    return pd_amgdd(eta, null, q);
}

double invert_threshold(const std::function<double(double)>& pfa_fn, double target)
{
    if (!(target > 0.0 && target < 1.0))
        throw std::domain_error("invert_threshold: target must lie in (0,1)");
    auto close_enough = [target](double v) { return std::abs(v - target) <= 1e-12 * target; };

    double lo = 0.0;
    double hi = 1.0;
    double v = pfa_fn(hi);
    if (close_enough(v))
        return hi;
    if (v > target) {
        // threshold too low: expand upward
        while (true) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e300)
                throw std::domain_error("invert_threshold: target not bracketable");
            v = pfa_fn(hi);
            if (close_enough(v))
                return hi;
            if (v < target)
                break;
        }
    } else {
        // threshold too high: shrink downward
        while (true) {
            lo = hi * 0.5;
            if (lo < 1e-300)
                return 0.0;
            v = pfa_fn(lo);
            if (close_enough(v))
                return lo;
            if (v > target)
                break;
            hi = lo;
        }
    }
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        v = pfa_fn(mid);
        if (close_enough(v))
            return mid;
        if (v > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12 * hi)
            break;
    }
    return 0.5 * (lo + hi);
}

double theoretical_pd(Detector det, double eta, const DistParams& p, const QuadratureOptions& q)
{
    return det == Detector::glrgdd ? pd_glrgdd(eta, p, q) : pd_amgdd(eta, p, q);
}

double theoretical_pfa(Detector det, double eta, const DistParams& p, const QuadratureOptions& q)
{
    return det == Detector::glrgdd ? pfa_glrgdd(eta, p) : pfa_amgdd(eta, p, q);
}

double theoretical_threshold(Detector det, double pfa_target, const DistParams& p,
                             const QuadratureOptions& q)
{
    return invert_threshold([&](double eta) { return theoretical_pfa(det, eta, p, q); }, pfa_target);
}

} // namespace gdd
