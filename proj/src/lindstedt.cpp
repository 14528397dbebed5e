#include "pnf/lindstedt.hpp"

#include "pnf/prep.hpp"

#include <utility>
#include <vector>

namespace pnf {

namespace {

Scalar scalar_from_rational(const Rational& r, Mode mode) {
  if (mode == Mode::exact) return Scalar::exact(r);
  return Scalar::numeric(r.convert_to<double>());
}

PoissonSeries div_by_freq(const PoissonSeries& s, const FrequencySpec& freq) {
  if (!freq.symbolic())
    return s.scaled(Scalar::numeric(1.0 / freq.values.at(0).to_double()));
  ParamMonomial pm(s.n_dof());
  if (freq.kind == FrequencySpec::Kind::symbolic_omega)
    pm.omega_exp = -1;
  else
    pm.omega0_exp = -1;
  return s.mul_param(pm);
}

/// d^n/dphi^n of cos or sin (k phi), without the k^n factor: the trig kind
/// and sign cycle with period four.
void trig_derivative(Trig trig, int n, Trig& out, int& sign) {
  static const Trig kind_cos[4] = {Trig::cos, Trig::sin, Trig::cos, Trig::sin};
  static const int sign_cos[4] = {1, -1, -1, 1};
  static const Trig kind_sin[4] = {Trig::sin, Trig::cos, Trig::sin, Trig::cos};
  static const int sign_sin[4] = {1, 1, -1, -1};
  const int m = n % 4;
  out = trig == Trig::cos ? kind_cos[m] : kind_sin[m];
  sign = trig == Trig::cos ? sign_cos[m] : sign_sin[m];
}

/// Substitute q = phi + dq, J = J0 + dj into an action-angle series G and
/// Taylor-expand both arguments, complete through epsilon order `through`.
/// The J powers of G live in the J0 parameter slot; after the expansion that
/// slot holds genuine J0 powers.
PoissonSeries expand_on_torus(const PoissonSeries& G, const PoissonSeries& dq,
                              const PoissonSeries& dj, int through) {
  const int n = G.n_dof();
  const Mode mode = G.mode();
  const int cutoff = G.eps_cutoff();
  PoissonSeries out(n, mode, cutoff);

  std::vector<PoissonSeries> dq_pow, dj_pow;
  {
    PoissonSeries unit(n, mode, cutoff);
    unit.add_const(0, ParamMonomial(n), Scalar::one(mode));
    dq_pow.push_back(unit);
    dj_pow.push_back(unit);
    for (int i = 1; i <= through; ++i) {
      dq_pow.push_back(dq_pow.back() * dq);
      dj_pow.push_back(dj_pow.back() * dj);
    }
  }

  for (const auto& [key, c] : G.terms()) {
    if (key.eps > through) continue;
    const int budget = through - key.eps;
    const int h2 = key.pm.j0_exp2[0];
    const int k = key.wave[0];

    for (int m = 0; m <= budget; ++m) {
      const Rational binom = half_binomial(h2, m);
      if (binom == 0) continue;
      for (int nn = 0; nn + m <= budget; ++nn) {
        if (k == 0 && nn > 0) break;
        Trig kind;
        int sign;
        trig_derivative(key.trig, nn, kind, sign);

        Rational factor = binom * sign;
        for (int t = 0; t < nn; ++t) factor *= k;
        for (int t = 2; t <= nn; ++t) factor /= t;

        TermKey nk;
        nk.eps = key.eps;
        nk.pm = key.pm;
        nk.pm.j0_exp2[0] = h2 - 2 * m;
        nk.p_exp.assign(n, 0);
        nk.trig = k == 0 ? Trig::cos : kind;
        nk.wave = key.wave;

        PoissonSeries piece(n, mode, cutoff);
        piece.add_term(std::move(nk),
                       c * scalar_from_rational(factor, mode));
        if (m > 0) piece = piece * dj_pow[m];
        if (nn > 0) piece = piece * dq_pow[nn];
        out = out + piece;
      }
    }
  }
  return out;
}

PoissonSeries strip_eps(const PoissonSeries& s) {
  PoissonSeries out(s.n_dof(), s.mode(), s.eps_cutoff(), s.p_cutoff());
  for (const auto& [key, c] : s.terms()) {
    TermKey nk = key;
    nk.eps = 0;
    out.add_term(std::move(nk), c);
  }
  return out;
}

}  // namespace

PoissonSeries integrate_trig(const PoissonSeries& f,
                             const FrequencySpec& base) {
  if (f.n_dof() != 1)
    throw Error("integrate_trig: single degree of freedom only");
  PoissonSeries scaled = div_by_freq(f, base);
  PoissonSeries anti(f.n_dof(), f.mode(), f.eps_cutoff(), f.p_cutoff());
  for (const auto& [key, c] : scaled.terms()) {
    const int k = key.wave[0];
    if (k == 0)
      throw Error(
          "integrate_trig: angle-free term in the integrand would grow "
          "secularly");
    TermKey nk = key;
    Scalar nc = c;
    if (key.trig == Trig::cos) {
      nk.trig = Trig::sin;
      nc.div_int(k);
    } else {
      nk.trig = Trig::cos;
      nc.div_int(-k);
    }
    anti.add_term(std::move(nk), std::move(nc));
  }
  return anti - anti.value_at_zero_angle();
}

std::pair<PoissonSeries, PoissonSeries> extract_secular(
    const PoissonSeries& f) {
  PoissonSeries avg = f.angle_average();
  return {-avg, f - avg};
}

LindstedtResult lindstedt_run(const OscillatorModel& model,
                              LindstedtScheme scheme, int order,
                              const FrequencySpec* target) {
  if (model.n_dof != 1)
    throw Error("lindstedt_run: single degree of freedom only");
  if (order < 1) throw Error("lindstedt_run: order must be positive");

  PoissonSeries H = to_action_angle(model, order);
  const Mode mode = H.mode();

  FrequencySpec base;
  if (scheme == LindstedtScheme::b) {
    base = model.omega0;
  } else if (target) {
    base = *target;
    if (base.kind == FrequencySpec::Kind::symbolic_omega0)
      throw Error("lindstedt_run: scheme k cannot target the unperturbed "
                  "frequency");
  } else {
    base = FrequencySpec::omega_symbol();
  }
  if (mode == Mode::exact && !base.symbolic())
    throw Error("lindstedt_run: numeric frequencies require a numeric model");

  // dq/dt = dH/dJ, dJ/dt = -dH/dq; the epsilon^0 constant of the first
  // equation is the base rotation and is handled by the scheme bookkeeping.
  PoissonSeries Gq = drop_energy_offset(H.derivative_j0(0));
  PoissonSeries FJ = -H.derivative_q(0);

  LindstedtResult out;
  out.scheme = scheme;
  out.order = order;
  out.dq = PoissonSeries(1, mode, order);
  out.dj = PoissonSeries(1, mode, order);
  PoissonSeries asum(1, mode, order);

  for (int r = 1; r <= order; ++r) {
    PoissonSeries rhs_q = expand_on_torus(Gq, out.dq, out.dj, r).eps_part(r);
    if (scheme == LindstedtScheme::b && !asum.empty())
      rhs_q = rhs_q + (asum * out.dq.derivative_q(0)).eps_part(r);

    auto [a_r, osc] = extract_secular(rhs_q);
    out.a.push_back(strip_eps(a_r));
    asum = asum + a_r;
    out.dq = out.dq + integrate_trig(osc, base);

    PoissonSeries rhs_j = expand_on_torus(FJ, out.dq, out.dj, r).eps_part(r);
    if (scheme == LindstedtScheme::b && !asum.empty())
      rhs_j = rhs_j + (asum * out.dj.derivative_q(0)).eps_part(r);
    if (!rhs_j.angle_average().empty())
      throw Error(
          "lindstedt_run: secular drift in the action equation; the "
          "expansion is inconsistent");
    out.dj = out.dj + integrate_trig(rhs_j, base);
  }
  return out;
}

}  // namespace pnf
