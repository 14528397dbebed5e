#include "pnf/prep.hpp"

#include <algorithm>

namespace pnf {

namespace {

PoissonSeries pow_series(const PoissonSeries& base, int e, int n_dof, Mode mode,
                         int eps_cutoff) {
  PoissonSeries r(n_dof, mode, eps_cutoff);
  r.add_const(0, ParamMonomial(n_dof), Scalar::one(mode));
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

Rational int_binomial(int n, int m) {
  Rational r(1);
  for (int i = 0; i < m; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

}  // namespace

Rational half_binomial(int h2, int m) {
  Rational num(1), den(1);
  for (int i = 0; i < m; ++i) {
    num *= (h2 - 2 * i);
    den *= 2 * (i + 1);
  }
  return num / den;
}

int required_expansion_order(int k, int n) {
  (void)k;
  return n;
}

PoissonSeries to_action_angle(const OscillatorModel& model, int eps_cutoff) {
  const int n = model.n_dof;
  const Mode mode = model.terms.empty()
                        ? (model.omega0.symbolic() ? Mode::exact
                                                   : model.omega0.values.at(0).mode())
                        : model.terms.front().coeff.mode();
  PoissonSeries H(n, mode, eps_cutoff);

  // unperturbed part: sum_d omega0_d J_d
  for (int d = 0; d < n; ++d) {
    ParamMonomial pm = ParamMonomial::j0_power(n, d, 2);
    Scalar c = Scalar::one(mode);
    if (model.omega0.symbolic())
      pm.omega0_exp = 1;
    else
      c = model.omega0.values.at(d);
    H.add_const(0, std::move(pm), std::move(c));
  }

  // x_d = sqrt(2) J_d^(1/2) sin q_d, p_d = sqrt(2) J_d^(1/2) cos q_d
  auto angle_factor = [&](int d, Trig trig) {
    PoissonSeries s(n, mode, eps_cutoff);
    std::vector<int> wave(n, 0);
    wave[d] = 1;
    Scalar c = mode == Mode::exact ? Scalar::exact(Rational(0), Rational(1))
                                   : Scalar::numeric(kSqrt2);
    s.add_term(0, ParamMonomial::j0_power(n, d, 1), std::vector<int>(n, 0),
               trig, std::move(wave), std::move(c));
    return s;
  };

  for (const ModelTerm& t : model.terms) {
    if (t.eps_power > eps_cutoff) continue;
    PoissonSeries prod(n, mode, eps_cutoff);
    prod.add_const(0, ParamMonomial(n), t.coeff);
    for (int d = 0; d < n; ++d) {
      if (t.x_exp[d] > 0)
        prod = prod * pow_series(angle_factor(d, Trig::sin), t.x_exp[d], n,
                                 mode, eps_cutoff);
      if (t.p_exp[d] > 0)
        prod = prod * pow_series(angle_factor(d, Trig::cos), t.p_exp[d], n,
                                 mode, eps_cutoff);
    }
    H = H + prod.shift_eps(t.eps_power);
  }
  return H;
}

PoissonSeries translate_and_expand(const PoissonSeries& action_series,
                                   int taylor_degree, bool keep_constants) {
  if (taylor_degree < 0)
    throw Error("translate_and_expand: negative Taylor degree");
  const int n = action_series.n_dof();
  const Mode mode = action_series.mode();
  PoissonSeries out(n, mode, action_series.eps_cutoff(),
                    action_series.p_cutoff());

  for (const auto& [key, coeff] : action_series.terms()) {
    for (int e : key.p_exp)
      if (e != 0)
        throw Error(
            "translate_and_expand: input mixes momentum terms with action "
            "powers");

    PoissonSeries partial(n, mode, action_series.eps_cutoff(),
                          action_series.p_cutoff());
    {
      TermKey tk = key;
      std::fill(tk.pm.j0_exp2.begin(), tk.pm.j0_exp2.end(), 0);
      partial.add_term(std::move(tk), coeff);
    }

    for (int d = 0; d < n; ++d) {
      const int h2 = key.pm.j0_exp2[d];
      if (h2 == 0) continue;
      PoissonSeries factor(n, mode, action_series.eps_cutoff(),
                           action_series.p_cutoff());
      int mmax;
      if (h2 % 2 == 0) {
        if (h2 < 0)
          throw Error(
              "translate_and_expand: negative integer action power cannot be "
              "translated");
        mmax = h2 / 2;
      } else {
        mmax = taylor_degree;
      }
      for (int m = 0; m <= mmax; ++m) {
        Rational b = h2 % 2 == 0 ? int_binomial(h2 / 2, m) : half_binomial(h2, m);
        if (b == 0) continue;
        Scalar c = mode == Mode::exact
                       ? Scalar::exact(b)
                       : Scalar::numeric(b.convert_to<double>());
        std::vector<int> p_exp(n, 0);
        p_exp[d] = m;
        factor.add_term(0, ParamMonomial::j0_power(n, d, h2 - 2 * m),
                        std::move(p_exp), Trig::cos, std::vector<int>(n, 0),
                        std::move(c));
      }
      partial = partial * factor;
    }
    out = out + partial;
  }
  return keep_constants ? out : out.without_constants();
}

PoissonSeries drop_energy_offset(const PoissonSeries& h) {
  PoissonSeries r(h.n_dof(), h.mode(), h.eps_cutoff(), h.p_cutoff());
  for (const auto& [key, c] : h.terms()) {
    if (key.eps == 0 &&
        std::all_of(key.wave.begin(), key.wave.end(),
                    [](int w) { return w == 0; }) &&
        std::all_of(key.p_exp.begin(), key.p_exp.end(),
                    [](int e) { return e == 0; }))
      continue;
    r.add_term(key, c);
  }
  return r;
}

}  // namespace pnf
