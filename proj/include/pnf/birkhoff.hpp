#pragma once

#include "pnf/lie.hpp"
#include "pnf/models.hpp"

#include <vector>

namespace pnf {

struct BirkhoffResult {
  int order = 0;
  /// Angle-free normal form through the requested order, with the inert
  /// constants split off into `constants`.
  PoissonSeries normal_form;
  /// Terms above the construction order, kept for diagnostics.
  PoissonSeries remainder_head;
  /// One mixed generator per order, in step order.
  std::vector<GeneratingFunction> ledger;
  /// Pure parameter constants accumulated at epsilon order r, index r-1.
  std::vector<PoissonSeries> constants;
  /// Frequency of the motion on the torus p = 0, per dof: dZ/dp_d at p = 0
  /// as a parameter series in J0 (and the frequency symbol at epsilon^0).
  std::vector<PoissonSeries> frequency;
};

/// Order-by-order elimination of the angle dependence with
/// unperturbed-frequency divisors.  At each order n the full remainder is
/// fed to one generator; the angle averages accumulate into the normal form.
///
/// eps_cutoff = 0 runs the transforms one order past `order` so that the
/// leading remainder terms are available in the result.
BirkhoffResult birkhoff_normalize(const OscillatorModel& model, int order,
                                  const DivisorGuard* guard = nullptr,
                                  int eps_cutoff = 0);

/// Split off the terms with neither angle nor momentum dependence.
/// Returns the constant-free series; appends the constants at epsilon order
/// r to constants[r-1].
PoissonSeries split_constants(const PoissonSeries& h,
                              std::vector<PoissonSeries>& constants);

}  // namespace pnf
