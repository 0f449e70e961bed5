#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gdd {

/// z·sqrt(p(1−p)/n).
double binomial_halfwidth(double p, std::int64_t n, double z = 3.0);

/// sup |F_n − F| for the empirical CDF of `sorted` (ascending).
double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// sup |F_n − G_m| for two ascending samples.
double ks_two_sample_statistic(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(λ) = 2Σ(−1)^(k−1)exp(−2k²λ²).
double kolmogorov_sf(double lambda);

/// Asymptotic p-values with Stephens' finite-sample correction.
double ks_pvalue(double d, std::int64_t n);
double ks_two_sample_pvalue(double d, std::int64_t n, std::int64_t m);

/// D such that ks_pvalue(D, n) = alpha.
double ks_critical_value(std::int64_t n, double alpha);

/// 1-based order-statistic rank ⌈n·(1−pfa)⌉ used for an exceedance quantile.
std::int64_t exceedance_rank(std::int64_t n, double pfa);

} // namespace gdd
