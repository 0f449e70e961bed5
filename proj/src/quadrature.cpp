#include "gdd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace gdd {

namespace {

QuadratureRule build_rule(int n)
{
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton on P_n from the Chebyshev-like initial guess; symmetric pairs.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double pnm1 = n == 1 ? 1.0 : p0;
        const double pn = n == 1 ? x : p1;
        dp = n * (x * pn - pnm1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // [-1,1] → [0,1]
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre(int order)
{
    if (order < 1)
        throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot)
        slot = std::make_unique<const QuadratureRule>(build_rule(order));
    return *slot;
}

double integrate_unit(const std::function<double(double)>& f, const QuadratureOptions& opts)
{
    int order = std::max(1, opts.order);
    double coarse = gauss_legendre(order).apply(f);
    if (!opts.check_convergence)
        return coarse;
    while (2 * order <= opts.max_order) {
        order *= 2;
        const double fine = gauss_legendre(order).apply(f);
        if (std::abs(fine - coarse) <= opts.tolerance)
            return fine;
        coarse = fine;
    }
    throw QuadratureError("integrate_unit: no convergence up to order " + std::to_string(order));
}

} // namespace gdd
