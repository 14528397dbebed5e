#pragma once

#include "pnf/series.hpp"

#include <vector>

namespace pnf {

/// Frequency-correction map of a finished construction: the corrections a_r
/// as parameter series in J0, epsilon stripped, index r-1.  The relation is
///   omega0 - omega = sum_r eps^r a_r(J0)
/// with the divisors of the a_r in the target frequency for torus-fixing
/// maps (implicit relation) and in the unperturbed frequency otherwise.
struct FrequencyMap {
  bool implicit_in_omega = false;
  std::vector<PoissonSeries> a;
};

/// Amplitude of the torus carrying the detuned frequency omega0 + d_omega:
/// the frequency relation d_omega = f(J0) is reverted as a power series in
/// d_omega and evaluated, truncating the inverse series at the order of the
/// map.  For an implicit map omega0 + d_omega is substituted for the target
/// frequency in the a_r first.
double invert_frequency_map(const FrequencyMap& map, double d_omega,
                            double eps, double omega0);

/// Forward map: the detuning omega - omega0 of the torus with amplitude j0.
/// For the implicit maps this solves the frequency relation by fixed-point
/// iteration.
double detuning_at(const FrequencyMap& map, double j0, double eps,
                   double omega0);

}  // namespace pnf
