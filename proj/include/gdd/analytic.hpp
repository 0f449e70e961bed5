#pragma once

#include <functional>

#include "gdd/detectors.hpp"
#include "gdd/model.hpp"
#include "gdd/quadrature.hpp"

namespace gdd {

/// Dimensions plus linear SNR for the closed-form performance expressions.
///
/// Derived quantities: the CDF exponent N1 = L+P−O, the sum bound
/// Kmax = L+P−Q−O, and the complex-F degrees of freedom (Q, L+P−Q−O+1).
struct DistParams {
    int O = 12;
    int P = 6;
    int Q = 3;
    int L = 11;
    double rho = 0.0;

    static DistParams from(const Scenario& s, double rho = 0.0);

    int n1() const noexcept { return L + P - O; }
    int kmax() const noexcept { return L + P - Q - O; }
    int f_dof_num() const noexcept { return Q; }
    int f_dof_den() const noexcept { return L + P - Q - O + 1; }

    /// Throws std::invalid_argument if the dimension bounds or rho ≥ 0 fail.
    void validate() const;
};

/// Conditional CDF of the complex noncentral F statistic with DOF
/// (Q, L+P−Q−O+1) at threshold eta given noncentrality:
/// Σ_{k=0..Kmax} C(N1,k+Q)·η^(k+Q)·IG_{k+1}(nc/(1+η)) / (1+η)^N1.
double cdf_p1(double eta, double noncentrality, const DistParams& p);

/// Complex Beta density CB(L+P−O+1, O−1) of the GLRGDD loss factor.
double pdf_beta_g(double beta, const DistParams& p);

/// Complex Beta density CB(L+P−Q−O+2, O−1) of the AMGDD loss factor.
double pdf_beta_a(double beta, const DistParams& p);

/// Pr[t′ > eta] for the GLRGDD at SNR p.rho, integrated over the loss factor.
double pd_glrgdd(double eta, const DistParams& p, const QuadratureOptions& q = {});

/// Closed form of pd_glrgdd at rho = 0 (the Beta mixing integrates out).
double pfa_glrgdd(double eta, const DistParams& p);

/// Pr[t_AMGDD > eta] at SNR p.rho.
double pd_amgdd(double eta, const DistParams& p, const QuadratureOptions& q = {});

/// pd_amgdd at rho = 0; still needs the quadrature.
double pfa_amgdd(double eta, const DistParams& p, const QuadratureOptions& q = {});

/// eta with pfa_fn(eta) = target for strictly decreasing pfa_fn with
/// pfa_fn(0) = 1. Geometric bracket expansion then bisection; stops when
/// |pfa − target| ≤ 1e−12·target or the bracket is 1e−12 relative.
/// Throws std::domain_error for targets outside (0,1).
double invert_threshold(const std::function<double(double)>& pfa_fn, double target);

// Detector-dispatching conveniences.
double theoretical_pd(Detector det, double eta, const DistParams& p, const QuadratureOptions& q = {});
double theoretical_pfa(Detector det, double eta, const DistParams& p, const QuadratureOptions& q = {});
double theoretical_threshold(Detector det, double pfa_target, const DistParams& p,
                             const QuadratureOptions& q = {});

} // namespace gdd
