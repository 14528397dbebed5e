#include "pnf/invert.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pnf {

namespace {

/// Coefficients d_1..d_n of the compositional inverse x = sum_m d_m y^m of
/// y = sum_k c_k x^k, both truncated at order n.  c is indexed by power and
/// c[1] must be nonzero.
std::vector<double> revert_power_series(const std::vector<double>& c, int n) {
  std::vector<double> d(n + 1, 0.0);
  d[1] = 1.0 / c[1];
  for (int m = 2; m <= n; ++m) {
    // [y^m] of sum_{k>=2} c_k (d_1 y + ... + d_{m-1} y^{m-1})^k; the k = 1
    // term holds the unknown d_m and is solved for.
    std::vector<double> pw(m + 1, 0.0);
    pw[0] = 1.0;
    double acc = 0.0;
    for (int k = 1; k <= m; ++k) {
      std::vector<double> next(m + 1, 0.0);
      for (int i = 0; i < m; ++i) {
        if (pw[i] == 0.0) continue;
        for (int j = 1; i + j <= m; ++j) next[i + j] += pw[i] * d[j];
      }
      pw = std::move(next);
      if (k >= 2 && k < static_cast<int>(c.size())) acc += c[k] * pw[m];
    }
    d[m] = -acc / c[1];
  }
  return d;
}

double map_sum(const FrequencyMap& map, double j0, double eps, double omega,
               double omega0) {
  EvalContext ctx;
  ctx.eps = 1.0;
  ctx.omega = omega;
  ctx.omega0 = omega0;
  ctx.j0.assign(1, j0);
  ctx.q.assign(1, 0.0);
  double acc = 0.0;
  double ek = 1.0;
  for (const auto& s : map.a) {
    ek *= eps;
    acc += ek * s.evaluate(ctx);
  }
  return acc;
}

}  // namespace

double invert_frequency_map(const FrequencyMap& map, double d_omega,
                            double eps, double omega0) {
  if (map.a.empty()) throw Error("invert_frequency_map: empty map");
  if (d_omega == 0.0) return 0.0;
  const double omega = omega0 + d_omega;

  // Collect d_omega = -sum_r eps^r a_r(J0) as a numeric power series in J0.
  // For an implicit map the divisors are bound to the target frequency, so
  // the coefficients already carry the full omega dependence and the
  // relation left to invert is an ordinary one-variable series.
  const int n = static_cast<int>(map.a.size());
  std::vector<double> c(n + 1, 0.0);
  double ek = 1.0;
  for (const auto& a_r : map.a) {
    ek *= eps;
    for (const auto& [key, coeff] : a_r.terms()) {
      const bool flat = std::all_of(key.wave.begin(), key.wave.end(),
                                    [](int k) { return k == 0; }) &&
                        std::all_of(key.p_exp.begin(), key.p_exp.end(),
                                    [](int e) { return e == 0; });
      if (!flat)
        throw Error(
            "invert_frequency_map: map term depends on angle or momentum");
      const int e2 = key.pm.j0_exp2[0];
      if (e2 % 2 != 0)
        throw Error("invert_frequency_map: map has half-integer J0 powers");
      if (e2 == 0)
        throw Error("invert_frequency_map: map has a J0-independent part");
      const int k = e2 / 2;
      if (k > n) continue;
      c[k] -= ek * coeff.to_double() * std::pow(omega, key.pm.omega_exp) *
              std::pow(omega0, key.pm.omega0_exp);
    }
  }
  if (c[1] == 0.0)
    throw Error("invert_frequency_map: leading J0 coefficient vanishes");

  const std::vector<double> d = revert_power_series(c, n);
  double j0 = 0.0;
  double yk = 1.0;
  for (int m = 1; m <= n; ++m) {
    yk *= d_omega;
    j0 += d[m] * yk;
  }
  return j0;
}

double detuning_at(const FrequencyMap& map, double j0, double eps,
                   double omega0) {
  if (!map.implicit_in_omega) return -map_sum(map, j0, eps, 0.0, omega0);

  double d = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double next = -map_sum(map, j0, eps, omega0 + d, omega0);
    if (std::abs(next - d) < 1e-14) return next;
    d = next;
  }
  throw Error("detuning_at: frequency relation did not contract");
}

}  // namespace pnf
