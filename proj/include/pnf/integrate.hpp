#pragma once

#include "pnf/scalar.hpp"

#include <functional>
#include <vector>

namespace pnf {

/// Right-hand side f(t, y, dydt); dydt is sized to y.
using OdeRhs =
    std::function<void(double, const std::vector<double>&, std::vector<double>&)>;

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double h_init = 0.0;  ///< 0 picks a starting step from the first sample gap
  double h_max = 0.0;   ///< 0 means unbounded
};

/// Dormand-Prince 5(4) integration of y' = f(t, y), reporting the state at
/// the given strictly increasing sample times (the first entry being the
/// initial time).  Steps land exactly on the sample times; there is no
/// interpolation error in the reported states.
std::vector<std::vector<double>> integrate_ode(
    const OdeRhs& rhs, std::vector<double> y0,
    const std::vector<double>& t_samples, const OdeOptions& opts = {});

}  // namespace pnf
