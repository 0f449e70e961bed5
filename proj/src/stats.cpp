#include "gdd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gdd {

double binomial_halfwidth(double p, std::int64_t n, double z)
{
    if (n <= 0)
        throw std::invalid_argument("binomial_halfwidth: n must be positive");
    return z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf)
{
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_two_sample_statistic(std::span<const double> a, std::span<const double> b)
{
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double kolmogorov_sf(double lambda)
{
    if (lambda <= 0.0)
        return 1.0;
    if (lambda < 0.2)
        return 1.0; // series is numerically 1 here
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-17)
            break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double stephens_scale(double n_eff)
{
    const double s = std::sqrt(n_eff);
    return s + 0.12 + 0.11 / s;
}

} // namespace

double ks_pvalue(double d, std::int64_t n)
{
    return kolmogorov_sf(stephens_scale(static_cast<double>(n)) * d);
}

double ks_two_sample_pvalue(double d, std::int64_t n, std::int64_t m)
{
    const double n_eff = static_cast<double>(n) * m / static_cast<double>(n + m);
    return kolmogorov_sf(stephens_scale(n_eff) * d);
}

double ks_critical_value(std::int64_t n, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ks_critical_value: alpha must lie in (0,1)");
    double lo = 0.2;
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_sf(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) / stephens_scale(static_cast<double>(n));
}

std::int64_t exceedance_rank(std::int64_t n, double pfa)
{
    if (n < 1 || !(pfa > 0.0 && pfa < 1.0))
        throw std::invalid_argument("exceedance_rank: need n >= 1 and pfa in (0,1)");
    const auto rank = static_cast<std::int64_t>(std::ceil(static_cast<double>(n) * (1.0 - pfa) - 1e-9));
    return std::clamp<std::int64_t>(rank, 1, n);
}

} // namespace gdd
