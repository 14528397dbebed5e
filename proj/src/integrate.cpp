#include "pnf/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pnf {

namespace {

// Dormand-Prince 5(4) tableau.  The fifth-order weights equal the last
// stage row (first-same-as-last), e holds the embedded error weights.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<std::vector<double>> integrate_ode(
    const OdeRhs& rhs, std::vector<double> y0,
    const std::vector<double>& t_samples, const OdeOptions& opts) {
  if (t_samples.size() < 2)
    throw Error("integrate_ode: need at least two sample times");
  for (std::size_t i = 1; i < t_samples.size(); ++i)
    if (!(t_samples[i] > t_samples[i - 1]))
      throw Error("integrate_ode: sample times must increase");
  if (opts.rel_tol < 2.3e-14)
    throw Error("integrate_ode: relative tolerance below machine range");

  const std::size_t n = y0.size();
  std::vector<double> y = std::move(y0);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n),
      ytmp(n), ynew(n);

  std::vector<std::vector<double>> out;
  out.reserve(t_samples.size());
  out.push_back(y);

  double t = t_samples.front();
  double h = opts.h_init > 0.0 ? opts.h_init
                               : 0.01 * (t_samples[1] - t_samples[0]);
  // PI step control, tuned as in the classic production codes.
  const double beta = 0.04;
  const double expo1 = 0.2 - beta * 0.75;
  const double safe = 0.9, fac_min = 0.2, fac_max = 10.0;
  double facold = 1e-4;

  rhs(t, y, k1);
  long long steps = 0;

  for (std::size_t is = 1; is < t_samples.size(); ++is) {
    const double t_end = t_samples[is];
    while (t < t_end) {
      if (++steps > 100000000)
        throw Error("integrate_ode: step budget exhausted");
      if (opts.h_max > 0.0) h = std::min(h, opts.h_max);
      double hs = h;
      bool clamped = false;
      if (t + hs >= t_end) {
        hs = t_end - t;
        clamped = true;
      }
      if (hs <= std::abs(t) * 1e-15) {
        std::ostringstream os;
        os << "integrate_ode: step size underflow at t = " << t;
        throw Error(os.str());
      }

      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
      rhs(t + c2 * hs, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
      rhs(t + c3 * hs, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      rhs(t + c4 * hs, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                               a54 * k4[i]);
      rhs(t + c5 * hs, ytmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                               a64 * k4[i] + a65 * k5[i]);
      rhs(t + hs, ytmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                               a75 * k5[i] + a76 * k6[i]);
      rhs(t + hs, ynew, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double sc =
            opts.abs_tol +
            opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        err += (ei / sc) * (ei / sc);
      }
      err = std::sqrt(err / static_cast<double>(n));

      const double fac11 = std::pow(err, expo1);
      if (err <= 1.0) {
        t += hs;
        y.swap(ynew);
        k1.swap(k7);
        if (!clamped) {
          double fac = fac11 / std::pow(facold, beta);
          fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
          h = hs / fac;
        }
        facold = std::max(err, 1e-4);
      } else {
        h = hs / std::min(1.0 / fac_min, fac11 / safe);
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace pnf
