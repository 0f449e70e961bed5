#include "gdd/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gdd {

double max_abs(const ComplexMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol)
{
    if (m.rows() != m.cols())
        return false;
    const double scale = std::max(1.0, max_abs(m));
    return max_abs(m - m.adjoint()) <= tol * scale;
}

HermitianFactor::HermitianFactor(const ComplexMatrix& m, double rel_pivot_tol)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("HermitianFactor: matrix is not square");
    const Index n = m.rows();
    double diag_max = 0.0;
    for (Index i = 0; i < n; ++i)
        diag_max = std::max(diag_max, m(i, i).real());
    const double floor = rel_pivot_tol * diag_max;

    lower_ = ComplexMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        double d = m(j, j).real();
        for (Index k = 0; k < j; ++k)
            d -= std::norm(lower_(j, k));
        if (!(d > floor) || !std::isfinite(d))
            throw FactorizationError("matrix is not positive definite", j);
        const double ljj = std::sqrt(d);
        lower_(j, j) = ljj;
        for (Index i = j + 1; i < n; ++i) {
            cplx s = m(i, j);
            for (Index k = 0; k < j; ++k)
                s -= lower_(i, k) * std::conj(lower_(j, k));
            lower_(i, j) = s / ljj;
        }
    }
}

ComplexMatrix HermitianFactor::whiten(const ComplexMatrix& b) const
{
    return lower_.triangularView<Eigen::Lower>().solve(b);
}

ComplexMatrix HermitianFactor::solve(const ComplexMatrix& b) const
{
    if (b.rows() != size())
        throw std::invalid_argument("HermitianFactor::solve: row count mismatch");
    ComplexMatrix y = whiten(b);
    lower_.adjoint().triangularView<Eigen::Upper>().solveInPlace(y);
    return y;
}

ComplexMatrix hermitian_solve(const ComplexMatrix& m, const ComplexMatrix& b)
{
    if (!is_hermitian(m))
        throw std::invalid_argument("hermitian_solve: matrix is not Hermitian");
    return HermitianFactor(m).solve(b);
}

Projectors projector(const ComplexMatrix& c)
{
    if (c.rows() == 0 || c.rows() > c.cols())
        throw std::invalid_argument("projector: C must be Q×P with 1 ≤ Q ≤ P");
    const ComplexMatrix gram = c * c.adjoint();
    const HermitianFactor factor(gram, 1e-12);
    Projectors p;
    p.range = c.adjoint() * factor.solve(c);
    p.range = 0.5 * (p.range + p.range.adjoint()).eval();
    p.complement = ComplexMatrix::Identity(c.cols(), c.cols()) - p.range;
    return p;
}

ComplexMatrix gram_inv_sqrt(const ComplexMatrix& c)
{
    const ComplexMatrix gram = c * c.adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("gram_inv_sqrt: eigendecomposition failed");
    const Eigen::VectorXd& lambda = eig.eigenvalues(); // ascending
    const double top = lambda.size() ? lambda(lambda.size() - 1) : 0.0;
    if (lambda.size() == 0 || !(lambda(0) > 1e-12 * top))
        throw FactorizationError("gram_inv_sqrt: C·Cᴴ is not positive definite", 0);
    const Eigen::VectorXd inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
    const ComplexMatrix& v = eig.eigenvectors();
    ComplexMatrix w = v * inv_sqrt.asDiagonal() * v.adjoint();
    return 0.5 * (w + w.adjoint());
}

ComplexMatrix sample_colored_gaussian(const ComplexMatrix& factor, Index cols, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix w(factor.cols(), cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < w.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            w(i, j) = cplx(re, im);
        }
    return factor.triangularView<Eigen::Lower>() * w;
}

} // namespace gdd
