#include "pnf/kolmogorov.hpp"

#include "pnf/birkhoff.hpp"
#include "pnf/prep.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace pnf {

namespace {

bool zero_wave(const std::vector<int>& wave) {
  return std::all_of(wave.begin(), wave.end(), [](int w) { return w == 0; });
}

/// Momentum-unit test: p_exp = e_dof for some dof.
bool p_unit(const std::vector<int>& p_exp, int& dof) {
  dof = -1;
  for (std::size_t d = 0; d < p_exp.size(); ++d) {
    if (p_exp[d] == 0) continue;
    if (p_exp[d] != 1 || dof >= 0) return false;
    dof = static_cast<int>(d);
  }
  return dof >= 0;
}

PoissonSeries scale_by_freq(const PoissonSeries& s, int dof,
                            const FrequencySpec& freq) {
  if (!freq.symbolic()) return s.scaled(freq.values.at(dof));
  ParamMonomial pm(s.n_dof());
  if (freq.kind == FrequencySpec::Kind::symbolic_omega)
    pm.omega_exp = 1;
  else
    pm.omega0_exp = 1;
  return s.mul_param(pm);
}

GeneratingFunction trivial_generator(GeneratingFunction::Kind kind, int grade,
                                     int n_dof, Mode mode, int eps_cutoff) {
  GeneratingFunction g;
  g.kind = kind;
  g.grade = grade;
  g.trig = PoissonSeries(n_dof, mode, eps_cutoff);
  g.K.assign(n_dof, PoissonSeries(n_dof, mode, eps_cutoff));
  g.S.assign(n_dof, PoissonSeries(n_dof, mode, eps_cutoff));
  return g;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

CountertermHamiltonian substitute_frequency_series(const PoissonSeries& H,
                                                   const FrequencySpec& target,
                                                   int orders) {
  if (target.kind == FrequencySpec::Kind::symbolic_omega0)
    throw Error(
        "substitute_frequency_series: the target cannot be the unperturbed "
        "frequency");
  const int n = H.n_dof();
  const Mode mode = H.mode();
  PoissonSeries base(n, mode, H.eps_cutoff(), H.p_cutoff());

  for (const auto& [key, c] : H.terms()) {
    const bool has_w0 = key.pm.omega0_exp != 0;
    if (!has_w0 && key.eps > 0) {
      base.add_term(key, c);
      continue;
    }

    int dof = -1;
    bool linear = p_unit(key.p_exp, dof) && zero_wave(key.wave) &&
                  key.trig == Trig::cos && key.eps == 0 &&
                  key.pm.omega_exp == 0 &&
                  std::all_of(key.pm.j0_exp2.begin(), key.pm.j0_exp2.end(),
                              [](int e) { return e == 0; }) &&
                  key.pm.omega0_exp == (has_w0 ? 1 : 0);
    if (!linear)
      throw Error(
          "substitute_frequency_series: the unperturbed frequency must enter "
          "only through the epsilon^0 momentum-linear term");

    TermKey nk = key;
    nk.pm.omega0_exp = 0;
    Scalar nc = Scalar::one(mode);
    if (target.symbolic())
      nk.pm.omega_exp = 1;
    else
      nc = target.values.at(dof);
    base.add_term(std::move(nk), std::move(nc));
  }

  CountertermHamiltonian out{std::move(base), {}};
  for (int i = 1; i <= orders; ++i) {
    std::vector<PoissonSeries> comps;
    comps.reserve(n);
    for (int d = 0; d < n; ++d) {
      PoissonSeries s(n, mode, H.eps_cutoff(), H.p_cutoff());
      std::vector<int> pe(n, 0);
      pe[d] = 1;
      s.add_term(i, ParamMonomial(n), std::move(pe), Trig::cos,
                 std::vector<int>(n, 0), Scalar::one(mode));
      comps.push_back(std::move(s));
    }
    out.sym.emplace(i, std::move(comps));
  }
  return out;
}

KolmogorovStep kolmogorov_step(CountertermHamiltonian& H, int r,
                               const FrequencySpec& freq,
                               const DivisorGuard& guard) {
  const int n = H.base.n_dof();
  const Mode mode = H.base.mode();
  const int cutoff = H.base.eps_cutoff();

  auto sym_it = H.sym.find(r);
  if (sym_it == H.sym.end()) {
    std::ostringstream os;
    os << "kolmogorov_step: no counterterm placeholder left for order " << r;
    throw Error(os.str());
  }

  KolmogorovStep step;

  // Counterterm: cancel the angle average of the momentum-linear part.
  step.a.assign(n, PoissonSeries(n, mode, cutoff));
  const PoissonSeries secular =
      H.base.eps_part(r).p_degree_part(1).angle_average();
  for (const auto& [key, c] : secular.terms()) {
    int dof = -1;
    p_unit(key.p_exp, dof);
    step.a[dof].add_const(0, key.pm, -c);
  }
  for (int d = 0; d < n; ++d)
    if (!step.a[d].empty()) H.base = H.base + step.a[d] * sym_it->second[d];
  H.sym.erase(sym_it);

  auto apply = [&H](const GeneratingFunction& chi) {
    H.base = lie_transform(H.base, chi);
    for (auto& [i, comps] : H.sym)
      for (PoissonSeries& s : comps) s = lie_transform(s, chi);
  };

  // First half step: remove the momentum-free angle terms.
  PoissonSeries h_r0 = H.base.eps_part(r).p_degree_part(0);
  PoissonSeries oscillating = h_r0.without_constants();
  step.chi1 =
      oscillating.empty()
          ? trivial_generator(GeneratingFunction::Kind::angle_only, r, n,
                              mode, cutoff)
          : solve_homological_angle(oscillating, freq, guard);

  PoissonSeries w_dot_k(n, mode, cutoff);
  for (int d = 0; d < n; ++d)
    if (!step.chi1.K[d].empty())
      w_dot_k = w_dot_k + scale_by_freq(step.chi1.K[d], d, freq);
  step.c_r = h_r0.angle_average() - w_dot_k;

  apply(step.chi1);

  // Second half step: remove the momentum-linear angle terms.
  PoissonSeries h_hat_r1 = H.base.eps_part(r).p_degree_part(1);
  step.chi2 =
      h_hat_r1.empty()
          ? trivial_generator(GeneratingFunction::Kind::linear_in_p, r, n,
                              mode, cutoff)
          : solve_homological_linear(h_hat_r1, freq, guard);
  apply(step.chi2);

  const PoissonSeries residue = H.base.eps_part(r);
  for (const auto& [key, c] : residue.terms()) {
    int deg = 0;
    for (int e : key.p_exp) deg += e;
    if (deg >= 2) continue;
    if (deg == 0 && zero_wave(key.wave)) continue;  // inert constant C_r
    std::ostringstream os;
    os << "kolmogorov_step: normalization residue left at order " << r;
    throw Error(os.str());
  }
  return step;
}

KolmogorovResult kolmogorov_normalize(const OscillatorModel& model, int order,
                                      const FrequencySpec& target,
                                      const DivisorGuard* guard_in,
                                      int eps_cutoff) {
  if (order < 1) throw Error("kolmogorov_normalize: order must be positive");
  const int cutoff = eps_cutoff > 0 ? eps_cutoff : order + 1;
  if (cutoff < order)
    throw Error("kolmogorov_normalize: cutoff below the construction order");

  // Keep the perturbation constants: they feed the energy constants C_r.
  // The epsilon^0 action term is an offset with no dynamical content and is
  // dropped before the frequency substitution.
  PoissonSeries expanded = drop_energy_offset(
      translate_and_expand(to_action_angle(model, cutoff), cutoff,
                           /*keep_constants=*/true));

  CountertermHamiltonian H =
      substitute_frequency_series(expanded, target, order);
  const DivisorGuard guard =
      guard_in ? *guard_in : make_divisor_guard(H.base, order);

  KolmogorovResult out;
  out.order = order;
  out.initial = H.base;
  for (int r = 1; r <= order; ++r) {
    KolmogorovStep step = kolmogorov_step(H, r, target, guard);
    out.ledger.push_back(step.chi1);
    out.ledger.push_back(step.chi2);
    out.steps.push_back(std::move(step));
  }

  const int n = model.n_dof;
  out.constants.assign(order, PoissonSeries(n, H.base.mode(), cutoff));
  out.normal_form = split_constants(H.base.truncated(order), out.constants);
  out.remainder_head =
      PoissonSeries(n, H.base.mode(), cutoff, H.base.p_cutoff());
  for (const auto& [key, c] : H.base.terms())
    if (key.eps > order) out.remainder_head.add_term(key, c);
  out.counterterm.assign(
      n, PoissonSeries(n, out.normal_form.mode(), order));
  for (std::size_t i = 0; i < out.steps.size(); ++i)
    for (int d = 0; d < n; ++d)
      if (!out.steps[i].a[d].empty())
        out.counterterm[d] =
            out.counterterm[d] +
            out.steps[i].a[d].shift_eps(static_cast<int>(i) + 1);
  return out;
}

PoissonSeries resolved_initial_hamiltonian(const KolmogorovResult& run) {
  PoissonSeries H = run.initial;
  const int n = H.n_dof();
  for (int d = 0; d < n; ++d) {
    if (run.counterterm[d].empty()) continue;
    PoissonSeries pd(n, H.mode(), H.eps_cutoff(), H.p_cutoff());
    std::vector<int> pe(n, 0);
    pe[d] = 1;
    pd.add_term(0, ParamMonomial(n), std::move(pe), Trig::cos,
                std::vector<int>(n, 0), Scalar::one(H.mode()));
    H = H + run.counterterm[d] * pd;
  }
  return H;
}

PoissonSeries closed_form_step_image(const PoissonSeries& H_prev,
                                     const GeneratingFunction& chi1,
                                     const GeneratingFunction& chi2,
                                     const FrequencySpec& freq, int r,
                                     int k_max, int i_max) {
  const int n = H_prev.n_dof();
  const Mode mode = H_prev.mode();
  const int cutoff = H_prev.eps_cutoff();

  auto piece = [&H_prev](int k, int i) {
    return H_prev.eps_part(k).p_degree_part(i);
  };
  // (1/(j! s!)) L_chi2^j L_chi1^s applied to a piece.
  auto iterated = [&](PoissonSeries s, int j2, int s1) {
    for (int t = 0; t < s1 && !s.empty(); ++t) s = lie_derivative(s, chi1);
    for (int t = 0; t < j2 && !s.empty(); ++t) s = lie_derivative(s, chi2);
    if (s.empty()) return s;
    return s.scaled_frac(1, factorial(j2) * factorial(s1));
  };

  PoissonSeries out(n, mode, cutoff, H_prev.p_cutoff());

  for (int k = 1; k <= k_max; ++k) {
    // momentum degree 0
    if (k < r) {
      out = out + piece(k, 0);
    } else if (k == r) {
      PoissonSeries w_dot_k(n, mode, cutoff);
      for (int d = 0; d < n; ++d)
        if (!chi1.K[d].empty())
          w_dot_k = w_dot_k + scale_by_freq(chi1.K[d], d, freq);
      out = out + piece(r, 0).angle_average() - w_dot_k;
    } else if (k <= 2 * r - 1) {
      out = out + piece(k, 0);
    } else if (k == 2 * r) {
      for (int j = 0; j <= (2 * r - 1) / r; ++j)
        out = out + iterated(piece(2 * r - j * r, j), 0, j);
    } else if (k % r != 0) {
      const int jj = (k - 1) / r;
      for (int j = 0; j <= jj - 2; ++j)
        for (int s = 0; s <= (k - j * r - 1) / r; ++s)
          out = out + iterated(piece(k - j * r - s * r, s), j, s);
      out = out + iterated(piece(k - (jj - 1) * r, 0), jj - 1, 0);
    } else {
      for (int j = 0; j <= (k - 1) / r - 1; ++j)
        for (int s = 0; s <= (k - j * r - 1) / r; ++s)
          out = out + iterated(piece(k - j * r - s * r, s), j, s);
    }

    // momentum degree 1 (zero for k <= r)
    if (k > r && k % r != 0) {
      for (int j = 0; j <= (k - 1) / r - 1; ++j)
        for (int s = 0; s <= (k - j * r - 1) / r; ++s)
          out = out + iterated(piece(k - j * r - s * r, 1 + s), j, s);
    } else if (k > r) {
      const int m = k / r;
      for (int j = 0; j <= (k - 2) / r; ++j)
        for (int s = 0; s <= (k - j * r - 1) / r; ++s)
          out = out + iterated(piece(k - j * r - s * r, 1 + s), j, s);
      PoissonSeries tail = piece(r, 1);
      for (int t = 0; t < m - 1 && !tail.empty(); ++t)
        tail = lie_derivative(tail, chi2);
      if (!tail.empty())
        out = out + tail.scaled_frac(m - 1, factorial(m));
    }

    // momentum degrees >= 2
    for (int i = 2; i <= i_max; ++i) {
      if (k <= r) {
        out = out + piece(k, i);
      } else {
        for (int j = 0; j <= (k - 1) / r; ++j)
          for (int s = 0; s <= (k - j * r - 1) / r; ++s)
            out = out + iterated(piece(k - j * r - s * r, i + s), j, s);
      }
    }
  }
  return out;
}

}  // namespace pnf
