#pragma once

// Direct evaluations of the detector statistics in their original forms,
// using explicit general (LU) inverses. Verification only: these share no
// code path with detectors.cpp and are used by the validate mode and tests.

#include "gdd/detectors.hpp"

namespace gdd::reference {

/// Original GLRT form
///   [aᴴ(S+ZZᴴ)⁻¹a]⁻¹ · aᴴS⁻¹Z(I+ZᴴS⁻¹Z)⁻¹Cᴴ[C(I+ZᴴS⁻¹Z)⁻¹Cᴴ]⁻¹C(I+ZᴴS⁻¹Z)⁻¹ZᴴS⁻¹a
/// evaluated literally. Needs S invertible (L ≥ O).
double glrgdd_original_literal(const TrialData& d, const SignalModel& m);

/// The same expression after the push-through identities
/// S⁻¹Z(I+ZᴴS⁻¹Z)⁻¹ = (S+ZZᴴ)⁻¹Z and (I+ZᴴS⁻¹Z)⁻¹ = I − Zᴴ(S+ZZᴴ)⁻¹Z, which
/// only needs S+ZZᴴ invertible and therefore covers L < O.
double glrgdd_original(const TrialData& d, const SignalModel& m);

/// aᴴM⁻¹Z·P_{Cᴴ}·ZᴴM⁻¹a / aᴴM⁻¹a with explicit P_{Cᴴ} = Cᴴ(CCᴴ)⁻¹C.
double amgdd_projector_form(const TrialData& d, const SignalModel& m, ScmMode mode);

/// Reduced GLRGDD form with explicit inverses (no Cholesky).
double glrgdd_reduced(const TrialData& d, const SignalModel& m);

} // namespace gdd::reference
