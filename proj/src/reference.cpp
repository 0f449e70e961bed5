#include "gdd/reference.hpp"

#include <Eigen/LU>

namespace gdd::reference {

namespace {

ComplexMatrix inv(const ComplexMatrix& m)
{
    return m.fullPivLu().inverse();
}

double quad(const ComplexVector& x, const ComplexMatrix& m, const ComplexVector& y)
{
    return (x.adjoint() * m * y)(0, 0).real();
}

} // namespace

double glrgdd_original_literal(const TrialData& d, const SignalModel& m)
{
    const ComplexVector& a = m.steering();
    const ComplexMatrix& c = m.row_basis();
    const ComplexMatrix& z = d.Z;
    const Index p = z.cols();
    const ComplexMatrix s = d.Z_L * d.Z_L.adjoint();
    const ComplexMatrix s_inv = inv(s);
    const ComplexMatrix t_inv = inv(s + z * z.adjoint());
    const ComplexMatrix g = inv(ComplexMatrix::Identity(p, p) + z.adjoint() * s_inv * z);
    const ComplexMatrix inner = inv(c * g * c.adjoint());
    const ComplexVector left = (a.adjoint() * s_inv * z * g * c.adjoint()).adjoint();
    const ComplexVector right = c * g * z.adjoint() * s_inv * a;
    return quad(left, inner, right) / quad(a, t_inv, a);
}

double glrgdd_original(const TrialData& d, const SignalModel& m)
{
    const ComplexVector& a = m.steering();
    const ComplexMatrix& c = m.row_basis();
    const ComplexMatrix& z = d.Z;
    const Index p = z.cols();
    const ComplexMatrix t_inv = inv(d.Z_L * d.Z_L.adjoint() + z * z.adjoint());
    const ComplexMatrix g = ComplexMatrix::Identity(p, p) - z.adjoint() * t_inv * z;
    const ComplexMatrix inner = inv(c * g * c.adjoint());
    const ComplexVector w = c * z.adjoint() * t_inv * a;
    return quad(w, inner, w) / quad(a, t_inv, a);
}

double amgdd_projector_form(const TrialData& d, const SignalModel& m, ScmMode mode)
{
    const ComplexVector& a = m.steering();
    const ComplexMatrix& c = m.row_basis();
    const ComplexMatrix& z = d.Z;
    const Index p = z.cols();
    const ComplexMatrix p_c = c.adjoint() * inv(c * c.adjoint()) * c;
    ComplexMatrix scm = d.Z_L * d.Z_L.adjoint();
    if (mode == ScmMode::augmented)
        scm += z * (ComplexMatrix::Identity(p, p) - p_c) * z.adjoint();
    const ComplexMatrix m_inv = inv(scm);
    const ComplexVector w = m_inv * a;
    return quad(w, z * p_c * z.adjoint(), w) / quad(a, m_inv, a);
}

double glrgdd_reduced(const TrialData& d, const SignalModel& m)
{
    const ComplexVector& a = m.steering();
    const ComplexMatrix& c = m.row_basis();
    const ComplexMatrix& z = d.Z;
    const Index p = z.cols();
    const Index q = c.rows();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(c * c.adjoint());
    const ComplexMatrix gram_inv_sqrt = eig.operatorInverseSqrt();
    const ComplexMatrix p_c = c.adjoint() * inv(c * c.adjoint()) * c;
    const ComplexMatrix s_plus =
        d.Z_L * d.Z_L.adjoint() + z * (ComplexMatrix::Identity(p, p) - p_c) * z.adjoint();
    const ComplexMatrix s_inv = inv(s_plus);
    const ComplexMatrix z_star = z * c.adjoint() * gram_inv_sqrt;
    const ComplexMatrix inner = inv(ComplexMatrix::Identity(q, q) + z_star.adjoint() * s_inv * z_star);
    const ComplexVector w = z_star.adjoint() * s_inv * a;
    return quad(w, inner, w) / quad(a, s_inv, a);
}

} // namespace gdd::reference
