#include "gdd/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gdd {

void CompensatedSum::add(double x) noexcept
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        carry_ += (sum_ - t) + x;
    else
        carry_ += (x - t) + sum_;
    sum_ = t;
}

double inc_gamma(int k, double a)
{
    if (k < 0)
        throw std::domain_error("inc_gamma: order must be >= 0");
    if (!(a >= 0.0))
        throw std::domain_error("inc_gamma: argument must be >= 0");
    if (a == 0.0)
        return 1.0;
    if (std::isinf(a))
        return 0.0;
    // Terms a^m e^(−a)/m! via log-domain recurrence; no factorials are formed.
    const double log_a = std::log(a);
    double log_term = -a;
    CompensatedSum sum;
    sum.add(std::exp(log_term));
    for (int m = 1; m <= k; ++m) {
        log_term += log_a - std::log(static_cast<double>(m));
        sum.add(std::exp(log_term));
    }
    return std::min(sum.value(), 1.0);
}

double log_binom(int n, int m)
{
    if (m < 0 || n < 0 || m > n)
        throw std::domain_error("log_binom: need 0 <= m <= n");
    if (m == 0 || m == n)
        return 0.0;
    return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

double log_beta(int m, int n)
{
    if (m < 1 || n < 1)
        throw std::domain_error("log_beta: arguments must be positive");
    return std::lgamma(static_cast<double>(m)) + std::lgamma(static_cast<double>(n)) -
           std::lgamma(static_cast<double>(m + n));
}

} // namespace gdd
