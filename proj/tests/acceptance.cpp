// End-to-end verification of the library's headline results: the canonical
// constructions on the two reference oscillators, their gold-standard
// coefficients, the structural identities of the algebra, and the numerical
// comparison harness.  Each block prints one PASS/FAIL line; the exit code
// is the number of failing blocks.

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "pnf/birkhoff.hpp"
#include "pnf/compare.hpp"
#include "pnf/integrate.hpp"
#include "pnf/invert.hpp"
#include "pnf/kolmogorov.hpp"
#include "pnf/lindstedt.hpp"
#include "pnf/prep.hpp"
#include "pnf/series_io.hpp"
#include "pnf/torus.hpp"
#include "test_util.hpp"

using namespace pnf;
using testutil::coeff_of;
using testutil::fr;
using testutil::negated;
using testutil::random_generator;
using testutil::random_series;
using testutil::s2;

namespace {

bool g_block_ok = true;

bool expect(bool cond, const char* what) {
  if (!cond) {
    std::cerr << "    failed: " << what << "\n";
    g_block_ok = false;
  }
  return cond;
}

void add_t(PoissonSeries& s, int eps, int j0e2, int we, int w0e, int pe,
           Trig tg, int wave, Scalar c) {
  ParamMonomial pm(1);
  pm.j0_exp2[0] = j0e2;
  pm.omega_exp = we;
  pm.omega0_exp = w0e;
  s.add_term(eps, pm, {pe}, tg, {wave}, std::move(c));
}

const Trig C = Trig::cos;
const Trig S = Trig::sin;

// ---- expected series of the quartic constructions -------------------------

PoissonSeries quartic_normal_form_old_divisors() {
  PoissonSeries z(1, Mode::exact, 2);
  add_t(z, 0, 0, 0, 1, 1, C, 0, fr(1, 1));
  add_t(z, 1, 2, 0, 0, 1, C, 0, fr(3, 4));
  add_t(z, 1, 0, 0, 0, 2, C, 0, fr(3, 8));
  add_t(z, 2, 4, 0, -1, 1, C, 0, fr(-69, 64));
  add_t(z, 2, 2, 0, -1, 2, C, 0, fr(-51, 64));
  add_t(z, 2, 0, 0, -1, 3, C, 0, fr(-17, 64));
  return z;
}

PoissonSeries quartic_dq_old_divisors() {
  PoissonSeries dq(1, Mode::exact, 2);
  add_t(dq, 1, 2, 0, -1, 0, S, 2, fr(-1, 2));
  add_t(dq, 1, 2, 0, -1, 0, S, 4, fr(1, 16));
  add_t(dq, 2, 4, 0, -2, 0, S, 2, fr(31, 32));
  add_t(dq, 2, 4, 0, -2, 0, S, 4, fr(-1, 32));
  add_t(dq, 2, 4, 0, -2, 0, S, 6, fr(-1, 32));
  add_t(dq, 2, 4, 0, -2, 0, S, 8, fr(1, 512));
  return dq;
}

PoissonSeries quartic_dj_old_divisors() {
  PoissonSeries dj(1, Mode::exact, 2);
  add_t(dj, 1, 4, 0, -1, 0, C, 0, fr(-3, 8));
  add_t(dj, 1, 4, 0, -1, 0, C, 2, fr(1, 2));
  add_t(dj, 1, 4, 0, -1, 0, C, 4, fr(-1, 8));
  add_t(dj, 2, 6, 0, -2, 0, C, 0, fr(13, 16));
  add_t(dj, 2, 6, 0, -2, 0, C, 2, fr(-33, 32));
  add_t(dj, 2, 6, 0, -2, 0, C, 4, fr(3, 16));
  add_t(dj, 2, 6, 0, -2, 0, C, 6, fr(1, 32));
  return dj;
}

PoissonSeries quartic_frequency_series() {
  PoissonSeries w(1, Mode::exact, 2);
  add_t(w, 0, 0, 0, 1, 0, C, 0, fr(1, 1));
  add_t(w, 1, 2, 0, 0, 0, C, 0, fr(3, 4));
  add_t(w, 2, 4, 0, -1, 0, C, 0, fr(-69, 64));
  return w;
}

PoissonSeries quartic_dq_target_divisors() {
  PoissonSeries dq(1, Mode::exact, 2);
  add_t(dq, 1, 2, -1, 0, 0, S, 2, fr(-1, 2));
  add_t(dq, 1, 2, -1, 0, 0, S, 4, fr(1, 16));
  add_t(dq, 2, 4, -2, 0, 0, S, 2, fr(19, 32));
  add_t(dq, 2, 4, -2, 0, 0, S, 4, fr(1, 64));
  add_t(dq, 2, 4, -2, 0, 0, S, 6, fr(-1, 32));
  add_t(dq, 2, 4, -2, 0, 0, S, 8, fr(1, 512));
  return dq;
}

PoissonSeries quartic_dj_target_divisors() {
  PoissonSeries dj(1, Mode::exact, 2);
  add_t(dj, 1, 4, -1, 0, 0, C, 0, fr(-3, 8));
  add_t(dj, 1, 4, -1, 0, 0, C, 2, fr(1, 2));
  add_t(dj, 1, 4, -1, 0, 0, C, 4, fr(-1, 8));
  add_t(dj, 2, 6, -2, 0, 0, C, 0, fr(17, 32));
  add_t(dj, 2, 6, -2, 0, 0, C, 2, fr(-21, 32));
  add_t(dj, 2, 6, -2, 0, 0, C, 4, fr(3, 32));
  add_t(dj, 2, 6, -2, 0, 0, C, 6, fr(1, 32));
  return dj;
}

PoissonSeries quartic_a1() {
  PoissonSeries a(1, Mode::exact, 2);
  add_t(a, 0, 2, 0, 0, 0, C, 0, fr(-3, 4));
  return a;
}

PoissonSeries quartic_a2_target() {
  PoissonSeries a(1, Mode::exact, 2);
  add_t(a, 0, 4, -1, 0, 0, C, 0, fr(69, 64));
  return a;
}

// ---- expected series of the cubic constructions ---------------------------

PoissonSeries cubic_dq_target_divisors() {
  PoissonSeries dq(1, Mode::exact, 3);
  add_t(dq, 1, 1, -1, 0, 0, C, 0, s2(-2, 3));
  add_t(dq, 1, 1, -1, 0, 0, C, 1, s2(3, 4));
  add_t(dq, 1, 1, -1, 0, 0, C, 3, s2(-1, 12));
  add_t(dq, 2, 2, -2, 0, 0, S, 1, fr(1, 1));
  add_t(dq, 2, 2, -2, 0, 0, S, 2, fr(3, 16));
  add_t(dq, 2, 2, -2, 0, 0, S, 3, fr(-1, 3));
  add_t(dq, 2, 2, -2, 0, 0, S, 4, fr(1, 8));
  add_t(dq, 2, 2, -2, 0, 0, S, 6, fr(-1, 144));
  add_t(dq, 3, 3, -3, 0, 0, C, 0, s2(-38, 81));
  add_t(dq, 3, 3, -3, 0, 0, C, 1, s2(1, 2));
  add_t(dq, 3, 3, -3, 0, 0, C, 2, s2(-1, 4));
  add_t(dq, 3, 3, -3, 0, 0, C, 3, s2(145, 288));
  add_t(dq, 3, 3, -3, 0, 0, C, 4, s2(-1, 3));
  add_t(dq, 3, 3, -3, 0, 0, C, 5, s2(1, 32));
  add_t(dq, 3, 3, -3, 0, 0, C, 6, s2(1, 36));
  add_t(dq, 3, 3, -3, 0, 0, C, 7, s2(-1, 96));
  add_t(dq, 3, 3, -3, 0, 0, C, 9, s2(1, 2592));
  return dq;
}

PoissonSeries cubic_dj_target_divisors() {
  PoissonSeries dj(1, Mode::exact, 3);
  add_t(dj, 1, 3, -1, 0, 0, S, 1, s2(1, 2));
  add_t(dj, 1, 3, -1, 0, 0, S, 3, s2(-1, 6));
  add_t(dj, 2, 4, -2, 0, 0, C, 0, fr(5, 6));
  add_t(dj, 2, 4, -2, 0, 0, C, 1, fr(-2, 3));
  add_t(dj, 2, 4, -2, 0, 0, C, 2, fr(-2, 3));
  add_t(dj, 2, 4, -2, 0, 0, C, 3, fr(2, 3));
  add_t(dj, 2, 4, -2, 0, 0, C, 4, fr(-1, 6));
  add_t(dj, 3, 5, -3, 0, 0, S, 1, s2(7, 8));
  add_t(dj, 3, 5, -3, 0, 0, S, 2, s2(-8, 9));
  add_t(dj, 3, 5, -3, 0, 0, S, 3, s2(13, 16));
  add_t(dj, 3, 5, -3, 0, 0, S, 4, s2(-4, 9));
  add_t(dj, 3, 5, -3, 0, 0, S, 5, s2(7, 144));
  return dj;
}

PoissonSeries cubic_dq3_old_divisors() {
  PoissonSeries dq(1, Mode::exact, 3);
  add_t(dq, 3, 3, 0, -3, 0, C, 0, s2(-83, 81));
  add_t(dq, 3, 3, 0, -3, 0, C, 1, s2(9, 8));
  add_t(dq, 3, 3, 0, -3, 0, C, 2, s2(-1, 4));
  add_t(dq, 3, 3, 0, -3, 0, C, 3, s2(125, 288));
  add_t(dq, 3, 3, 0, -3, 0, C, 4, s2(-1, 3));
  add_t(dq, 3, 3, 0, -3, 0, C, 5, s2(1, 32));
  add_t(dq, 3, 3, 0, -3, 0, C, 6, s2(1, 36));
  add_t(dq, 3, 3, 0, -3, 0, C, 7, s2(-1, 96));
  add_t(dq, 3, 3, 0, -3, 0, C, 9, s2(1, 2592));
  return dq;
}

PoissonSeries cubic_dj3_old_divisors() {
  PoissonSeries dj(1, Mode::exact, 3);
  add_t(dj, 3, 5, 0, -3, 0, S, 1, s2(31, 24));
  add_t(dj, 3, 5, 0, -3, 0, S, 2, s2(-8, 9));
  add_t(dj, 3, 5, 0, -3, 0, S, 3, s2(97, 144));
  add_t(dj, 3, 5, 0, -3, 0, S, 4, s2(-4, 9));
  add_t(dj, 3, 5, 0, -3, 0, S, 5, s2(7, 144));
  return dj;
}

// ---- criteria -------------------------------------------------------------

bool normal_form_and_solution() {
  BirkhoffResult r = birkhoff_normalize(quartic_model(Mode::exact), 2);
  expect(r.normal_form == quartic_normal_form_old_divisors(),
         "quartic normal form coefficients");

  TorusOrbit orbit = orbit_from_ledger(r.ledger, 1, Mode::exact, 2);
  expect(orbit.delta_q[0] == quartic_dq_old_divisors(),
         "angle correction of the normal-form solution");
  expect(orbit.delta_j[0] == quartic_dj_old_divisors(),
         "action correction of the normal-form solution");
  expect(r.frequency[0] == quartic_frequency_series(),
         "frequency of the motion on the torus");
  return g_block_ok;
}

bool lindstedt_matches_normal_form() {
  LindstedtResult b =
      lindstedt_run(quartic_model(Mode::exact), LindstedtScheme::b, 2);
  expect(b.dq == quartic_dq_old_divisors(), "angle correction, scheme b");
  expect(b.dj == quartic_dj_old_divisors(), "action correction, scheme b");

  PoissonSeries w(1, Mode::exact, 2);
  add_t(w, 0, 0, 0, 1, 0, C, 0, fr(1, 1));
  w = w - b.a[0].shift_eps(1) - b.a[1].shift_eps(2);
  expect(w == quartic_frequency_series(), "recovered frequency, scheme b");
  return g_block_ok;
}

bool lindstedt_torus_fixing() {
  LindstedtResult k =
      lindstedt_run(quartic_model(Mode::exact), LindstedtScheme::k, 2);
  expect(k.dq == quartic_dq_target_divisors(), "angle correction, scheme k");
  expect(k.dj == quartic_dj_target_divisors(), "action correction, scheme k");
  expect(k.a[0] == quartic_a1(), "first frequency correction");
  expect(k.a[1] == quartic_a2_target(),
         "second frequency correction with target divisor");
  return g_block_ok;
}

bool counterterm_iteration() {
  const FrequencySpec target = FrequencySpec::omega_symbol();
  KolmogorovResult r =
      kolmogorov_normalize(quartic_model(Mode::exact), 2, target);

  expect(r.steps[0].a[0] == quartic_a1(), "first counterterm");
  expect(r.steps[1].a[0] == quartic_a2_target(), "second counterterm");

  PoissonSeries chi1_trig(1, Mode::exact, 2);
  add_t(chi1_trig, 1, 4, -1, 0, 0, S, 2, fr(-1, 4));
  add_t(chi1_trig, 1, 4, -1, 0, 0, S, 4, fr(1, 32));
  expect(r.steps[0].chi1.trig == chi1_trig, "first angle generator");

  PoissonSeries k1(1, Mode::exact, 2);
  add_t(k1, 1, 4, -1, 0, 0, C, 0, fr(3, 8));
  expect(r.steps[0].chi1.K[0] == k1, "angle counterweight of step one");

  PoissonSeries chi2_trig(1, Mode::exact, 2);
  add_t(chi2_trig, 1, 2, -1, 0, 1, S, 2, fr(-1, 2));
  add_t(chi2_trig, 1, 2, -1, 0, 1, S, 4, fr(1, 16));
  expect(r.steps[0].chi2.trig == chi2_trig, "first momentum generator");
  expect(!r.steps[0].chi2.has_S(), "no momentum counterweight at step one");

  PoissonSeries chi1b(1, Mode::exact, 2);
  add_t(chi1b, 2, 6, -2, 0, 0, S, 2, fr(1, 4));
  add_t(chi1b, 2, 6, -2, 0, 0, S, 4, fr(-11, 128));
  add_t(chi1b, 2, 6, -2, 0, 0, S, 6, fr(1, 48));
  add_t(chi1b, 2, 6, -2, 0, 0, S, 8, fr(-1, 512));
  expect(r.steps[1].chi1.trig == chi1b, "second angle generator");

  PoissonSeries k2(1, Mode::exact, 2);
  add_t(k2, 2, 6, -2, 0, 0, C, 0, fr(-17, 64));
  expect(r.steps[1].chi1.K[0] == k2, "angle counterweight of step two");

  PoissonSeries chi2b(1, Mode::exact, 2);
  add_t(chi2b, 2, 4, -2, 0, 1, S, 2, fr(37, 64));
  add_t(chi2b, 2, 4, -2, 0, 1, S, 4, fr(-7, 64));
  add_t(chi2b, 2, 4, -2, 0, 1, S, 6, fr(1, 64));
  add_t(chi2b, 2, 4, -2, 0, 1, S, 8, fr(-1, 512));
  expect(r.steps[1].chi2.trig == chi2b, "second momentum generator");

  TorusOrbit orbit = orbit_from_ledger(r.ledger, 1, Mode::exact, 2);
  expect(orbit.delta_q[0] == quartic_dq_target_divisors(),
         "torus solution equals the torus-fixing expansion (angle)");
  expect(orbit.delta_j[0] == quartic_dj_target_divisors(),
         "torus solution equals the torus-fixing expansion (action)");
  return g_block_ok;
}

bool divisor_conventions_separate() {
  LindstedtResult b =
      lindstedt_run(quartic_model(Mode::exact), LindstedtScheme::b, 2);
  LindstedtResult k =
      lindstedt_run(quartic_model(Mode::exact), LindstedtScheme::k, 2);

  const struct {
    int wave;
    Scalar old_div, target_div;
  } rows[] = {
      {2, fr(31, 32), fr(19, 32)},
      {4, fr(-1, 32), fr(1, 64)},
      {6, fr(-1, 32), fr(-1, 32)},
      {8, fr(1, 512), fr(1, 512)},
  };
  for (const auto& row : rows) {
    expect(coeff_of(b.dq, 2, 4, 0, -2, 0, S, row.wave) == row.old_div,
           "second-order sine coefficient, unperturbed divisor");
    expect(coeff_of(k.dq, 2, 4, -2, 0, 0, S, row.wave) == row.target_div,
           "second-order sine coefficient, target divisor");
  }
  expect(b.dq.eps_part(2).size() == 4, "second-order term count, scheme b");
  expect(k.dq.eps_part(2).size() == 4, "second-order term count, scheme k");
  return g_block_ok;
}

bool cubic_constructions_agree() {
  const FrequencySpec target = FrequencySpec::omega_symbol();
  LindstedtResult k =
      lindstedt_run(cubic_model(Mode::exact), LindstedtScheme::k, 3);
  KolmogorovResult r = kolmogorov_normalize(cubic_model(Mode::exact), 3, target);
  TorusOrbit orbit = orbit_from_ledger(r.ledger, 1, Mode::exact, 3);

  expect(k.dq == cubic_dq_target_divisors(), "cubic angle correction");
  expect(k.dj == cubic_dj_target_divisors(), "cubic action correction");
  expect(orbit.delta_q[0] == k.dq, "iteration and expansion agree in the angle");
  expect(orbit.delta_j[0] == k.dj, "iteration and expansion agree in the action");

  expect(k.a[0].empty() && k.a[2].empty(), "no odd frequency corrections");
  expect(r.steps[0].a[0].empty() && r.steps[2].a[0].empty(),
         "no odd counterterms");
  PoissonSeries a2(1, Mode::exact, 3);
  add_t(a2, 0, 2, -1, 0, 0, C, 0, fr(5, 6));
  expect(k.a[1] == a2 && r.steps[1].a[0] == a2, "even frequency correction");

  expect(!r.steps[0].chi1.has_K(), "no angle counterweight at first order");
  PoissonSeries s1(1, Mode::exact, 3);
  add_t(s1, 1, 1, -1, 0, 0, C, 0, s2(-2, 3));
  expect(r.steps[0].chi2.S[0] == s1, "momentum counterweight at first order");
  return g_block_ok;
}

bool cubic_normal_form_diverges() {
  BirkhoffResult r = birkhoff_normalize(cubic_model(Mode::exact), 3);
  TorusOrbit orbit = orbit_from_ledger(r.ledger, 1, Mode::exact, 3);
  const PoissonSeries& dq = orbit.delta_q[0];
  const PoissonSeries& dj = orbit.delta_j[0];

  expect(dq.eps_part(3) == cubic_dq3_old_divisors(),
         "third-order angle correction of the normal-form solution");
  expect(dj.eps_part(3) == cubic_dj3_old_divisors(),
         "third-order action correction of the normal-form solution");

  expect(coeff_of(dq, 3, 3, 0, -3, 0, C, 0) == s2(-83, 81),
         "constant differs from the torus-fixing value");
  expect(coeff_of(dq, 3, 3, 0, -3, 0, C, 1) == s2(9, 8),
         "first harmonic differs from the torus-fixing value");
  expect(coeff_of(dj, 3, 5, 0, -3, 0, S, 1) == s2(31, 24),
         "action first harmonic differs from the torus-fixing value");
  expect(coeff_of(dj, 3, 5, 0, -3, 0, S, 3) == s2(97, 144),
         "action third harmonic differs from the torus-fixing value");

  // through second order the two solutions differ only by the divisor symbol
  expect(coeff_of(dq, 1, 1, 0, -1, 0, C, 0) == s2(-2, 3) &&
             coeff_of(dq, 1, 1, 0, -1, 0, C, 1) == s2(3, 4) &&
             coeff_of(dq, 1, 1, 0, -1, 0, C, 3) == s2(-1, 12),
         "first-order part keeps the shared coefficients");
  return g_block_ok;
}

bool closed_form_matches_composition() {
  const FrequencySpec target = FrequencySpec::omega_symbol();
  KolmogorovResult r =
      kolmogorov_normalize(quartic_model(Mode::exact), 2, target, nullptr, 4);
  PoissonSeries h0 = resolved_initial_hamiltonian(r);

  PoissonSeries prev = h0;
  for (int step = 1; step <= 2; ++step) {
    const KolmogorovStep& s = r.steps[step - 1];
    PoissonSeries seq = lie_transform(lie_transform(prev, s.chi1), s.chi2);
    PoissonSeries closed =
        closed_form_step_image(prev, s.chi1, s.chi2, target, step, 4, 3);
    for (int k = 1; k <= 4; ++k)
      for (int i = 0; i <= 3; ++i)
        expect(closed.eps_part(k).p_degree_part(i) ==
                   seq.eps_part(k).p_degree_part(i),
               "closed-form image piece");
    prev = seq;
  }
  return g_block_ok;
}

bool amplitude_recovery() {
  LindstedtResult k =
      lindstedt_run(quartic_model(Mode::exact), LindstedtScheme::k, 4);
  FrequencyMap map{true, k.a};

  const struct {
    double d_omega, j0;
  } cases[] = {
      {0.002, 0.0026769},
      {0.02, 0.0277048},
      {0.2, 0.383509},
  };
  for (const auto& cs : cases) {
    double j = invert_frequency_map(map, cs.d_omega, 1.0, 1.0);
    expect(std::abs(j - cs.j0) / cs.j0 < 1e-5, "recovered amplitude");
  }
  return g_block_ok;
}

bool long_run_error_comparison() {
  std::vector<CompareCase> cases(3);
  cases[0].omega = 1.002;
  cases[1].omega = 1.02;
  cases[2].omega = 1.2;

  auto reports = compare_errors(quartic_model(Mode::exact), cases);
  if (!expect(reports.size() == 3, "three cases reported")) return g_block_ok;

  for (const CaseReport& r : reports) {
    expect(r.max_err_k <= r.max_err_b,
           "torus-fixing scheme at or below the other everywhere");
    expect(r.fit_b.r2 >= 0.99, "linear growth of the scheme-b error");
    expect(r.fit_k.r2 >= 0.99, "linear growth of the scheme-k error");
  }
  expect(std::log10(reports[0].max_err_b / reports[0].max_err_k) >= 0.5,
         "half a decade of separation at small detuning");
  expect(std::log10(reports[2].max_err_b / reports[2].max_err_k) >= 1.0,
         "a full decade of separation at large detuning");
  return g_block_ok;
}

bool residuals_shrink_cubically() {
  const FrequencySpec target = FrequencySpec::omega_symbol();
  KolmogorovResult r =
      kolmogorov_normalize(quartic_model(Mode::exact), 2, target);
  TorusOrbit orbit = orbit_from_ledger(r.ledger, 1, Mode::exact, 2);
  FrequencyMap map{true, {r.steps[0].a[0], r.steps[1].a[0]}};

  PoissonSeries h = to_action_angle(quartic_model(Mode::exact), 1);
  PoissonSeries dh_dj = h.derivative_j0(0);
  PoissonSeries dh_dq = h.derivative_q(0);
  PoissonSeries dq_dphi = orbit.delta_q[0].derivative_q(0);
  PoissonSeries dj_dphi = orbit.delta_j[0].derivative_q(0);

  const double j0 = 0.1, omega0 = 1.0;
  auto worst_residual = [&](double eps) {
    double omega = omega0 + detuning_at(map, j0, eps, omega0);
    double worst = 0.0;
    const int n = 400;
    for (int i = 0; i < n; ++i) {
      EvalContext on_torus;
      on_torus.eps = eps;
      on_torus.omega = omega;
      on_torus.omega0 = omega0;
      on_torus.j0 = {j0};
      on_torus.q = {2.0 * M_PI * i / n};
      on_torus.p = {0.0};

      EvalContext at_state = on_torus;
      at_state.q = {on_torus.q[0] + orbit.delta_q[0].evaluate(on_torus)};
      at_state.j0 = {j0 + orbit.delta_j[0].evaluate(on_torus)};

      double r1 = omega * (1.0 + dq_dphi.evaluate(on_torus)) -
                  dh_dj.evaluate(at_state);
      double r2 = omega * dj_dphi.evaluate(on_torus) + dh_dq.evaluate(at_state);
      worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)));
    }
    return worst;
  };

  double big = worst_residual(0.2);
  double small = worst_residual(0.1);
  expect(small > 0.0, "residual is nonzero past the construction order");
  expect(big / small >= 6.4, "halving epsilon shrinks the residual eightfold");
  return g_block_ok;
}

bool bracket_axioms() {
  std::mt19937 rng(987654);
  for (int trial = 0; trial < 200; ++trial) {
    PoissonSeries f = random_series(rng);
    PoissonSeries g = random_series(rng);
    PoissonSeries h = random_series(rng);

    if (!expect(poisson_bracket(f, g) == -poisson_bracket(g, f),
                "antisymmetry"))
      break;
    if (!expect(poisson_bracket(f * g, h) ==
                    poisson_bracket(f, h) * g + f * poisson_bracket(g, h),
                "product rule"))
      break;
    PoissonSeries cyc = poisson_bracket(f, poisson_bracket(g, h)) +
                        poisson_bracket(g, poisson_bracket(h, f)) +
                        poisson_bracket(h, poisson_bracket(f, g));
    if (!expect(cyc.empty(), "cyclic identity")) break;
  }
  return g_block_ok;
}

bool transforms_canonical() {
  std::mt19937 rng(24601);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratingFunction chi = random_generator(rng, trial);
    PoissonSeries f = random_series(rng, 5, 4);
    PoissonSeries g = random_series(rng, 5, 4);

    if (!expect(lie_transform(poisson_bracket(f, g), chi) ==
                    poisson_bracket(lie_transform(f, chi),
                                    lie_transform(g, chi)),
                "bracket preserved"))
      break;
    if (!expect(lie_transform(lie_transform(f, chi), negated(chi)) == f,
                "negated generator inverts"))
      break;
  }
  return g_block_ok;
}

bool solutions_start_at_reference() {
  const FrequencySpec target = FrequencySpec::omega_symbol();
  std::vector<std::pair<PoissonSeries, PoissonSeries>> solutions;

  for (const char* name : {"quartic", "cubic"}) {
    OscillatorModel model = builtin_model(name, Mode::exact);
    const int order = model.name == "quartic" ? 2 : 3;

    BirkhoffResult br = birkhoff_normalize(model, order);
    TorusOrbit bo = orbit_from_ledger(br.ledger, 1, Mode::exact, order);
    solutions.emplace_back(bo.delta_q[0], bo.delta_j[0]);

    for (LindstedtScheme scheme : {LindstedtScheme::b, LindstedtScheme::k}) {
      LindstedtResult lr = lindstedt_run(model, scheme, order);
      solutions.emplace_back(lr.dq, lr.dj);
    }

    KolmogorovResult kr = kolmogorov_normalize(model, order, target);
    TorusOrbit ko = orbit_from_ledger(kr.ledger, 1, Mode::exact, order);
    solutions.emplace_back(ko.delta_q[0], ko.delta_j[0]);
  }

  expect(solutions.size() == 8, "all constructions produced a solution");
  for (const auto& [dq, dj] : solutions) {
    expect(dq.value_at_zero_angle().empty(), "angle starts at zero");
    expect(dj.value_at_zero_angle().empty(), "action starts at the reference");
  }
  return g_block_ok;
}

bool generator_amplitudes_bounded() {
  const FrequencySpec target = FrequencySpec::omega_symbol();
  KolmogorovResult r = kolmogorov_normalize(cubic_model(Mode::exact), 3, target);

  for (int n = 1; n <= 3; ++n) {
    const KolmogorovStep& s = r.steps[n - 1];
    int chi1_max = s.chi1.trig.max_j0_exp2(0);
    for (const PoissonSeries& k : s.chi1.K)
      chi1_max = std::max(chi1_max, k.max_j0_exp2(0));
    int chi2_max = s.chi2.series_part().max_j0_exp2(0);
    expect(chi1_max <= n + 2, "angle generator amplitude budget");
    expect(chi2_max <= n, "momentum generator amplitude budget");
  }
  return g_block_ok;
}

struct Criterion {
  std::string label;
  std::function<bool()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"quartic normal form, torus solution, and frequency through order two",
       normal_form_and_solution},
      {"quasi-periodic expansion reproduces the normal-form solution",
       lindstedt_matches_normal_form},
      {"torus-fixing expansion carries target-frequency divisors",
       lindstedt_torus_fixing},
      {"counterterm iteration generators and torus solution",
       counterterm_iteration},
      {"second-order angle corrections separate the divisor conventions",
       divisor_conventions_separate},
      {"cubic torus-fixing constructions agree through order three",
       cubic_constructions_agree},
      {"cubic normal-form solution diverges from the torus-fixing one",
       cubic_normal_form_diverges},
      {"closed-form step image equals the exponential composition",
       closed_form_matches_composition},
      {"amplitude recovery from frequency detunings",
       amplitude_recovery},
      {"long-run angle errors favor the torus-fixing scheme",
       long_run_error_comparison},
      {"equations-of-motion residuals shrink like the cube of epsilon",
       residuals_shrink_cubically},
      {"poisson bracket satisfies antisymmetry, Leibniz, and Jacobi",
       bracket_axioms},
      {"lie transforms are canonical and invert cleanly",
       transforms_canonical},
      {"every construction's solution starts at the reference point",
       solutions_start_at_reference},
      {"generator action powers stay within the per-order budget",
       generator_amplitudes_bounded},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    g_block_ok = true;
    bool ok = false;
    try {
      ok = criteria[i].fn();
    } catch (const std::exception& e) {
      std::cerr << "    exception: " << e.what() << "\n";
      ok = false;
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << i + 1 << "/"
              << criteria.size() << "] " << criteria[i].label << std::endl;
    if (!ok) ++failures;
  }
  return failures;
}
