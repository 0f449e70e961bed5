#pragma once

#include <algorithm>
#include <cmath>

#include "gdd/linalg.hpp"
#include "gdd/model.hpp"

namespace gdd::test {

inline ComplexMatrix gaussian(Index rows, Index cols, Rng& rng)
{
    return sample_colored_gaussian(ComplexMatrix::Identity(rows, rows), cols, rng);
}

/// Hermitian PD with eigenvalues log-spaced over [1/cond, 1].
inline ComplexMatrix hermitian_pd(Index n, double cond, Rng& rng)
{
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n, rng));
    const ComplexMatrix u = qr.householderQ();
    Eigen::VectorXd lambda(n);
    for (Index i = 0; i < n; ++i)
        lambda(i) = std::pow(cond, -static_cast<double>(i) / std::max<Index>(1, n - 1));
    const ComplexMatrix m = u * lambda.asDiagonal() * u.adjoint();
    return 0.5 * (m + m.adjoint());
}

inline SignalModel random_signal_model(Index o, Index p, Index q, Rng& rng)
{
    return SignalModel(gaussian(o, 1, rng).col(0), gaussian(q, p, rng), gaussian(q, 1, rng).col(0));
}

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Scenario with the O=12, P=6, Q=3, L=11 dimensions.
inline Scenario fig1()
{
    Scenario s;
    s.O = 12;
    s.P = 6;
    s.Q = 3;
    s.L = 11;
    s.pfa_target = 1e-3;
    return s;
}

} // namespace gdd::test
