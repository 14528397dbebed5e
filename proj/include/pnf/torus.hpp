#pragma once

#include "pnf/lie.hpp"

#include <vector>

namespace pnf {

/// Quasi-periodic solution in the original variables: with phi = freq * t,
///   q_d(t) = phi_d + delta_q_d(phi),   J_d(t) = J0_d + delta_j_d(phi).
/// Both corrections are trig series in the angles with parameter-only
/// coefficients; they vanish at phi = 0.
struct TorusOrbit {
  std::vector<PoissonSeries> delta_q;
  std::vector<PoissonSeries> delta_j;
};

/// Push the invariant torus p = 0, q = phi of the normalized variables back
/// through a transformation ledger.
TorusOrbit orbit_from_ledger(const std::vector<GeneratingFunction>& ledger,
                             int n_dof, Mode mode, int eps_cutoff);

}  // namespace pnf
