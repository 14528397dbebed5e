#pragma once

#include "pnf/models.hpp"
#include "pnf/series.hpp"

namespace pnf {

/// binomial(h2/2, m) as an exact rational, for half-integer (doubled) upper
/// argument: prod_{i<m} (h2 - 2i) / (2^m m!).
Rational half_binomial(int h2, int m);

/// Smallest Taylor degree in p that the translated expansion needs for a
/// normalization of order n of a degree-k perturbation.  Momentum corrections
/// on the reference torus are themselves of order eps, so degree n suffices.
int required_expansion_order(int k, int n);

/// Rewrite the model in action-angle variables of the unperturbed oscillator,
/// x_d = sqrt(2 J_d) sin q_d, p_d = sqrt(2 J_d) cos q_d.  The returned series
/// uses the J0 parameter slot for powers of the action variable J_d
/// (half-integer exponents for odd powers of x, p); it must be translated
/// before any J0-as-parameter interpretation applies.
PoissonSeries to_action_angle(const OscillatorModel& model, int eps_cutoff);

/// Translate J = J0 + p and expand.  Integer powers of J expand exactly by
/// the binomial theorem; half-integer powers are Taylor-expanded in p through
/// degree taylor_degree with exact rational binomial(h/2, m) coefficients.
/// Terms with no angle or momentum dependence are dropped unless
/// keep_constants is set.
PoissonSeries translate_and_expand(const PoissonSeries& action_series,
                                   int taylor_degree,
                                   bool keep_constants = false);

/// Drop the epsilon^0 terms with neither angle nor momentum dependence: the
/// energy of the expansion point, an offset with no dynamical content.
/// Higher-order constants are kept.
PoissonSeries drop_energy_offset(const PoissonSeries& h);

}  // namespace pnf
