#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace gdd {

/// Gauss-Legendre nodes and weights mapped to [0,1]; weights sum to 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int order() const noexcept { return static_cast<int>(nodes.size()); }

    template <class F>
    double apply(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Shared, immutable rule of the given order (≥ 1). Rules are built once
/// per order and cached for the process lifetime.
const QuadratureRule& gauss_legendre(int order);

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    int order = 96;
    double tolerance = 1e-9; // absolute change allowed on order doubling
    int max_order = 1536;
    bool check_convergence = true; // false: single evaluation at `order`
};

/// ∫₀¹ f. Evaluates at `order` and 2·order and keeps doubling until two
/// successive results agree to `tolerance`; returns the finer one.
/// Throws QuadratureError once max_order is exceeded. With
/// check_convergence off, evaluates once at `order`.
double integrate_unit(const std::function<double(double)>& f, const QuadratureOptions& opts = {});

} // namespace gdd
