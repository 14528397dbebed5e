#include "pnf/compare.hpp"

#include "pnf/integrate.hpp"
#include "pnf/invert.hpp"
#include "pnf/lindstedt.hpp"
#include "pnf/prep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>

namespace pnf {

namespace {

int max_eps_power(const OscillatorModel& model) {
  int m = 1;
  for (const auto& t : model.terms) m = std::max(m, t.eps_power);
  return m;
}

}  // namespace

LinearFit linear_fit(const std::vector<double>& t,
                     const std::vector<double>& e, double t_min) {
  double st = 0, se = 0, stt = 0, ste = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min) continue;
    st += t[i];
    se += e[i];
    stt += t[i] * t[i];
    ste += t[i] * e[i];
    ++n;
  }
  LinearFit fit;
  if (n < 2) return fit;
  const double nn = static_cast<double>(n);
  const double denom = nn * stt - st * st;
  if (denom == 0.0) return fit;
  fit.slope = (nn * ste - st * se) / denom;
  fit.intercept = (se - fit.slope * st) / nn;

  double ss_res = 0, ss_tot = 0;
  const double mean = se / nn;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min) continue;
    const double pred = fit.intercept + fit.slope * t[i];
    ss_res += (e[i] - pred) * (e[i] - pred);
    ss_tot += (e[i] - mean) * (e[i] - mean);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

LinearFit envelope_fit(const std::vector<double>& t,
                       const std::vector<double>& e, double t_min,
                       double period) {
  std::vector<double> pt, pe;
  if (!t.empty() && period > 0.0) {
    const int n_blocks =
        static_cast<int>(std::floor((t.back() - t_min) / period));
    for (int b = 0; b < n_blocks; ++b) {
      const double lo = t_min + b * period;
      const double hi = lo + period;
      double bt = 0.0, be = -1.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < lo || t[i] >= hi) continue;
        if (e[i] > be) {
          be = e[i];
          bt = t[i];
        }
      }
      if (be >= 0.0) {
        pt.push_back(bt);
        pe.push_back(be);
      }
    }
  }
  return linear_fit(pt, pe, -1.0);
}

std::vector<CaseReport> compare_errors(const OscillatorModel& model,
                                       const std::vector<CompareCase>& cases,
                                       const CompareOptions& opts) {
  if (model.n_dof != 1)
    throw Error("compare_errors: single degree of freedom only");
  if (model.omega0.kind != FrequencySpec::Kind::symbolic_omega0)
    throw Error("compare_errors: the model must keep its unperturbed "
                "frequency symbolic");
  if (opts.samples < 2) throw Error("compare_errors: need at least 2 samples");

  const LindstedtResult lind_b =
      lindstedt_run(model, LindstedtScheme::b, opts.order);
  const LindstedtResult lind_k =
      lindstedt_run(model, LindstedtScheme::k, opts.order);
  const FrequencyMap map_b{false, lind_b.a};
  const FrequencyMap map_k{true, lind_k.a};

  // The action-angle Hamiltonian is exact for polynomial models; only the
  // later momentum expansion truncates.  Its gradient drives the reference
  // integration.
  const PoissonSeries h_exact = to_action_angle(model, max_eps_power(model));
  const PoissonSeries dq_dt = h_exact.derivative_j0(0);
  const PoissonSeries dj_dt = -h_exact.derivative_q(0);

  std::vector<double> t_samples(opts.samples);
  for (int i = 0; i < opts.samples; ++i)
    t_samples[i] = opts.t_max * i / (opts.samples - 1);

  std::vector<CaseReport> reports(cases.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t ic = 0; ic < cases.size(); ++ic) {
    try {
    const CompareCase& cs = cases[ic];
    CaseReport rep;
    rep.params = cs;
    rep.order = opts.order;
    rep.t = t_samples;

    const double d_omega = cs.omega - cs.omega0;
    rep.j0 = invert_frequency_map(map_k, d_omega, cs.eps, cs.omega0);
    rep.omega_b =
        cs.omega0 + detuning_at(map_b, rep.j0, cs.eps, cs.omega0);

    EvalContext ctx;
    ctx.eps = cs.eps;
    ctx.omega = cs.omega;
    ctx.omega0 = cs.omega0;
    ctx.j0.assign(1, rep.j0);
    ctx.q.assign(1, 0.0);

    OdeRhs rhs = [&](double, const std::vector<double>& y,
                     std::vector<double>& dydt) {
      EvalContext c = ctx;
      c.q[0] = y[0];
      c.j0[0] = y[1];
      dydt[0] = dq_dt.evaluate(c);
      dydt[1] = dj_dt.evaluate(c);
    };
    const auto trajectory =
        integrate_ode(rhs, {0.0, rep.j0}, t_samples);

    rep.err_b.resize(t_samples.size());
    rep.err_k.resize(t_samples.size());
    for (std::size_t i = 0; i < t_samples.size(); ++i) {
      const double tt = t_samples[i];
      EvalContext c = ctx;

      c.q[0] = rep.omega_b * tt;
      const double q_b = c.q[0] + lind_b.dq.evaluate(c);
      c.q[0] = cs.omega * tt;
      const double q_k = c.q[0] + lind_k.dq.evaluate(c);

      rep.err_b[i] = std::abs(q_b - trajectory[i][0]);
      rep.err_k[i] = std::abs(q_k - trajectory[i][0]);
    }
    rep.max_err_b = *std::max_element(rep.err_b.begin(), rep.err_b.end());
    rep.max_err_k = *std::max_element(rep.err_k.begin(), rep.err_k.end());
    const double t_min = opts.fit_skip * opts.t_max;
    const double period = 2.0 * M_PI / cs.omega;
    rep.fit_b = envelope_fit(rep.t, rep.err_b, t_min, period);
    rep.fit_k = envelope_fit(rep.t, rep.err_k, t_min, period);

    reports[ic] = std::move(rep);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

void write_error_csv(std::ostream& os, const CaseReport& report) {
  const auto prec = os.precision(17);
  os << "# eps=" << report.params.eps << "\n"
     << "# omega0=" << report.params.omega0 << "\n"
     << "# omega=" << report.params.omega << "\n"
     << "# j0=" << report.j0 << "\n"
     << "# order=" << report.order << "\n"
     << "t,err_scheme_B,err_scheme_K\n";
  for (std::size_t i = 0; i < report.t.size(); ++i)
    os << report.t[i] << ',' << report.err_b[i] << ',' << report.err_k[i]
       << "\n";
  os.precision(prec);
}

void write_case_summary(std::ostream& os, const CaseReport& report) {
  const auto prec = os.precision(10);
  os << "eps=" << report.params.eps << " omega0=" << report.params.omega0
     << " omega=" << report.params.omega << "\n"
     << "j0=" << report.j0 << "\n"
     << "omega_scheme_b=" << report.omega_b << "\n"
     << "max_err_scheme_b=" << report.max_err_b << "\n"
     << "max_err_scheme_k=" << report.max_err_k << "\n"
     << "max_err_ratio=" << report.max_err_b / report.max_err_k << "\n"
     << "log10_gap="
     << std::log10(report.max_err_b / report.max_err_k) << "\n"
     << "fit_scheme_b: slope=" << report.fit_b.slope
     << " intercept=" << report.fit_b.intercept << " r2=" << report.fit_b.r2
     << "\n"
     << "fit_scheme_k: slope=" << report.fit_k.slope
     << " intercept=" << report.fit_k.intercept << " r2=" << report.fit_k.r2
     << "\n";
  os.precision(prec);
}

}  // namespace pnf
