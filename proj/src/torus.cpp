#include "pnf/torus.hpp"

namespace pnf {

TorusOrbit orbit_from_ledger(const std::vector<GeneratingFunction>& ledger,
                             int n_dof, Mode mode, int eps_cutoff) {
  TorusOrbit orbit;
  for (int d = 0; d < n_dof; ++d) {
    orbit.delta_q.push_back(
        transform_coordinates(ledger, Coordinate::q, d, n_dof, mode,
                              eps_cutoff)
            .at_zero_p());
    orbit.delta_j.push_back(
        transform_coordinates(ledger, Coordinate::p, d, n_dof, mode,
                              eps_cutoff)
            .at_zero_p());
  }
  return orbit;
}

}  // namespace pnf
