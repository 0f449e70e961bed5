#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "gdd/rng.hpp"

namespace gdd {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Raised when a Hermitian matrix is not numerically positive definite.
/// `pivot()` is the zero-based column where the Cholesky recursion broke down.
class FactorizationError : public std::runtime_error {
public:
    FactorizationError(const std::string& what, Index pivot)
        : std::runtime_error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot)
    {
    }

    Index pivot() const noexcept { return pivot_; }

private:
    Index pivot_;
};

/// Max-abs entry; 0 for empty matrices.
double max_abs(const ComplexMatrix& m);

/// True if ‖M − Mᴴ‖_max ≤ tol·max(1, ‖M‖_max).
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);

/// Lower-triangular Cholesky factor of a Hermitian positive-definite matrix.
///
/// Only the lower triangle of `m` is read. A nonpositive or non-finite pivot
/// throws FactorizationError carrying the failing column.
class HermitianFactor {
public:
    /// Pivots at or below `rel_pivot_tol`·max(diag M) are treated as breakdown.
    explicit HermitianFactor(const ComplexMatrix& m, double rel_pivot_tol = 0.0);

    Index size() const noexcept { return lower_.rows(); }
    const ComplexMatrix& lower() const noexcept { return lower_; }

    /// X with M·X = B.
    ComplexMatrix solve(const ComplexMatrix& b) const;
    /// L⁻¹·B; whitening step shared by all quadratic forms bᴴM⁻¹c.
    ComplexMatrix whiten(const ComplexMatrix& b) const;

private:
    ComplexMatrix lower_;
};

/// Solve M·X = B for Hermitian positive-definite M.
/// Throws std::invalid_argument if M is not Hermitian to 1e-10 or shapes
/// disagree, FactorizationError if M is not positive definite.
ComplexMatrix hermitian_solve(const ComplexMatrix& m, const ComplexMatrix& b);

/// Orthogonal projectors onto the row space of C and its complement in ℂᴾ.
struct Projectors {
    ComplexMatrix range;      // Cᴴ(CCᴴ)⁻¹C
    ComplexMatrix complement; // I − range
};

/// Throws std::invalid_argument if C has more rows than columns, or
/// FactorizationError if C·Cᴴ is singular (rank-deficient C).
Projectors projector(const ComplexMatrix& c);

/// Symmetric inverse square root (C·Cᴴ)^(−1/2).
ComplexMatrix gram_inv_sqrt(const ComplexMatrix& c);

/// G·W for lower-triangular G, with W having i.i.d. CN(0,1) entries (real and imaginary parts
/// independent, variance 1/2 each). Entries are drawn column-major, real
/// part first.
ComplexMatrix sample_colored_gaussian(const ComplexMatrix& factor, Index cols, Rng& rng);

} // namespace gdd
