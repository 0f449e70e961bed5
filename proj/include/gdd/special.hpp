#pragma once

namespace gdd {

/// e^(−a)·Σ_{m=0..k} a^m/m!, the regularized upper incomplete gamma function
/// at integer order k+1. Throws std::domain_error for a < 0 or k < 0.
double inc_gamma(int k, double a);

/// log C(n, m). Throws std::domain_error unless 0 ≤ m ≤ n.
double log_binom(int n, int m);

/// log B(m, n) = log[(m−1)!(n−1)!/(m+n−1)!] for positive integers.
double log_beta(int m, int n);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace gdd
