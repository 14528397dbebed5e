#pragma once

#include "pnf/models.hpp"

#include <utility>
#include <vector>

namespace pnf {

/// Which frequency anchors the expansion.  Scheme b develops around the
/// unperturbed frequency and recovers the true one as omega0 minus the
/// correction series; scheme k fixes the target frequency from the start and
/// shifts the unperturbed one by the corrections instead.
enum class LindstedtScheme { b, k };

struct LindstedtResult {
  LindstedtScheme scheme = LindstedtScheme::b;
  int order = 0;
  /// Frequency-correction coefficients a_r, epsilon stripped, index r-1.
  std::vector<PoissonSeries> a;
  /// Angle and action corrections: q(t) = phi + dq(phi), J(t) = J0 + dj(phi),
  /// both vanishing at phi = 0.  phi advances at omega0 - sum eps^r a_r for
  /// scheme b and at the target frequency for scheme k.
  PoissonSeries dq, dj;
};

/// Solve base * dg/dphi = f for a zero-average trig series f, normalized so
/// that g vanishes at phi = 0.  An angle-free term in the input means a
/// secular drift and raises an error.
PoissonSeries integrate_trig(const PoissonSeries& f,
                             const FrequencySpec& base);

/// Split off the angle average: {-<f>, f - <f>}.  The first member is the
/// frequency correction that cancels the drift of the angle equation.
std::pair<PoissonSeries, PoissonSeries> extract_secular(const PoissonSeries& f);

/// Order-by-order quasi-periodic solution of a one-dof model directly from
/// the equations of motion on the torus.  Scheme k needs a target frequency
/// only when the model is numeric (the symbol is implied otherwise).
LindstedtResult lindstedt_run(const OscillatorModel& model,
                              LindstedtScheme scheme, int order,
                              const FrequencySpec* target = nullptr);

}  // namespace pnf
