#include "pnf/lie.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace pnf {

namespace {

std::string wave_str(const std::vector<int>& wave) {
  std::ostringstream os;
  os << "(";
  for (std::size_t d = 0; d < wave.size(); ++d)
    os << (d ? "," : "") << wave[d];
  os << ")";
  return os.str();
}

int p_total(const TermKey& k) {
  return std::accumulate(k.p_exp.begin(), k.p_exp.end(), 0);
}

void check_wave_bound(const std::vector<int>& wave, const DivisorGuard& guard) {
  if (guard.max_wave <= 0) return;
  int n = 0;
  for (int w : wave) n += std::abs(w);
  if (n > guard.max_wave)
    throw DivisorError("homological solve: wave " + wave_str(wave) +
                           " exceeds the guard bound " +
                           std::to_string(guard.max_wave),
                       wave);
}

/// Divide coeff/pm in place by the divisor k . omega.
void apply_divisor(Scalar& coeff, ParamMonomial& pm,
                   const std::vector<int>& wave, const FrequencySpec& freq,
                   const DivisorGuard& guard) {
  check_wave_bound(wave, guard);
  if (freq.symbolic()) {
    if (wave.size() != 1)
      throw Error("homological solve: symbolic frequency requires one dof");
    coeff.div_int(wave[0]);
    if (freq.kind == FrequencySpec::Kind::symbolic_omega)
      pm.omega_exp -= 1;
    else
      pm.omega0_exp -= 1;
    return;
  }
  Scalar kw = Scalar::zero(freq.values.at(0).mode());
  double norm2 = 0.0;
  for (std::size_t d = 0; d < wave.size(); ++d) {
    Scalar c = freq.values.at(d);
    double v = c.to_double();
    norm2 += v * v;
    c.mul_int(wave[d]);
    kw += c;
  }
  double divisor = kw.to_double();
  if (std::abs(divisor) < guard.min_divisor_rel * std::sqrt(norm2))
    throw DivisorError("homological solve: divisor k . omega = " +
                           std::to_string(divisor) + " below threshold at wave " +
                           wave_str(wave),
                       wave);
  coeff /= kw;
}

int homogeneous_grade(const PoissonSeries& h, const char* who) {
  int grade = -1;
  for (const auto& [k, c] : h.terms()) {
    if (grade < 0)
      grade = k.eps;
    else if (k.eps != grade)
      throw Error(std::string(who) +
                  ": input mixes epsilon orders; generator grade undefined");
  }
  return grade < 0 ? 0 : grade;
}

}  // namespace

DivisorGuard make_divisor_guard(const PoissonSeries& input, int order) {
  DivisorGuard g;
  g.max_wave = 2 * input.max_wave_norm() * std::max(order, 1);
  return g;
}

PoissonSeries GeneratingFunction::series_part() const {
  PoissonSeries r = trig;
  for (std::size_t d = 0; d < S.size(); ++d) {
    if (S[d].empty()) continue;
    PoissonSeries pd(trig.n_dof(), trig.mode(), trig.eps_cutoff());
    std::vector<int> pe(trig.n_dof(), 0);
    pe[d] = 1;
    pd.add_term(0, ParamMonomial(trig.n_dof()), std::move(pe), Trig::cos,
                std::vector<int>(trig.n_dof(), 0), Scalar::one(trig.mode()));
    r = r + S[d] * pd;
  }
  return r;
}

bool GeneratingFunction::has_K() const {
  for (const auto& s : K)
    if (!s.empty()) return true;
  return false;
}

bool GeneratingFunction::has_S() const {
  for (const auto& s : S)
    if (!s.empty()) return true;
  return false;
}

PoissonSeries solve_oscillator_homological(const PoissonSeries& h,
                                           const FrequencySpec& freq,
                                           const DivisorGuard& guard) {
  PoissonSeries X(h.n_dof(), h.mode(), h.eps_cutoff(), h.p_cutoff());
  for (const auto& [key, c] : h.terms()) {
    bool zero_wave = std::all_of(key.wave.begin(), key.wave.end(),
                                 [](int w) { return w == 0; });
    if (zero_wave) continue;
    TermKey nk = key;
    Scalar nc = c;
    apply_divisor(nc, nk.pm, nk.wave, freq, guard);
    if (key.trig == Trig::cos) {
      nk.trig = Trig::sin;
    } else {
      nk.trig = Trig::cos;
      nc = -nc;
    }
    X.add_term(std::move(nk), std::move(nc));
  }
  return X;
}

std::vector<PoissonSeries> fix_K_constant(const PoissonSeries& h,
                                          const FrequencySpec& freq,
                                          const DivisorGuard& guard) {
  const int n = h.n_dof();
  std::vector<PoissonSeries> K(
      n, PoissonSeries(n, h.mode(), h.eps_cutoff()));
  for (const auto& [key, c] : h.terms()) {
    if (key.trig != Trig::cos) continue;
    bool zero_wave = std::all_of(key.wave.begin(), key.wave.end(),
                                 [](int w) { return w == 0; });
    if (zero_wave) continue;
    Scalar base = c;
    ParamMonomial pm = key.pm;
    apply_divisor(base, pm, key.wave, freq, guard);
    for (int d = 0; d < n; ++d) {
      if (key.wave[d] == 0) continue;
      Scalar kc = base;
      kc.mul_int(-key.wave[d]);
      K[d].add_const(key.eps, pm, std::move(kc));
    }
  }
  return K;
}

std::vector<PoissonSeries> fix_S_constant(const PoissonSeries& h,
                                          const FrequencySpec& freq,
                                          const DivisorGuard& guard) {
  const int n = h.n_dof();
  std::vector<PoissonSeries> S(
      n, PoissonSeries(n, h.mode(), h.eps_cutoff()));
  for (const auto& [key, c] : h.terms()) {
    if (key.trig != Trig::sin) continue;
    if (p_total(key) != 1) continue;
    int dof = 0;
    for (int d = 0; d < n; ++d)
      if (key.p_exp[d] == 1) dof = d;
    Scalar base = c;
    ParamMonomial pm = key.pm;
    apply_divisor(base, pm, key.wave, freq, guard);
    S[dof].add_const(key.eps, pm, std::move(base));
  }
  return S;
}

GeneratingFunction solve_homological_angle(const PoissonSeries& h,
                                           const FrequencySpec& freq,
                                           const DivisorGuard& guard) {
  for (const auto& [key, c] : h.terms())
    if (p_total(key) != 0)
      throw Error(
          "solve_homological_angle: input must be momentum-free; found a "
          "momentum term");
  GeneratingFunction g;
  g.kind = GeneratingFunction::Kind::angle_only;
  g.grade = homogeneous_grade(h, "solve_homological_angle");
  g.trig = solve_oscillator_homological(h, freq, guard);
  g.K = fix_K_constant(h, freq, guard);
  g.S.assign(h.n_dof(), PoissonSeries(h.n_dof(), h.mode(), h.eps_cutoff()));
  return g;
}

GeneratingFunction solve_homological_linear(const PoissonSeries& h,
                                            const FrequencySpec& freq,
                                            const DivisorGuard& guard) {
  for (const auto& [key, c] : h.terms()) {
    if (p_total(key) != 1)
      throw Error(
          "solve_homological_linear: input must be linear in the momenta");
    bool zero_wave = std::all_of(key.wave.begin(), key.wave.end(),
                                 [](int w) { return w == 0; });
    if (zero_wave)
      throw Error(
          "solve_homological_linear: input has a nonzero angle average; the "
          "counterterm condition was not applied");
  }
  GeneratingFunction g;
  g.kind = GeneratingFunction::Kind::linear_in_p;
  g.grade = homogeneous_grade(h, "solve_homological_linear");
  g.trig = solve_oscillator_homological(h, freq, guard);
  g.K.assign(h.n_dof(), PoissonSeries(h.n_dof(), h.mode(), h.eps_cutoff()));
  g.S = fix_S_constant(h, freq, guard);
  return g;
}

GeneratingFunction solve_homological_mixed(const PoissonSeries& h,
                                           const FrequencySpec& freq,
                                           const DivisorGuard& guard) {
  GeneratingFunction g;
  g.kind = GeneratingFunction::Kind::birkhoff_mixed;
  g.grade = homogeneous_grade(h, "solve_homological_mixed");
  g.trig = solve_oscillator_homological(h, freq, guard);
  g.K = fix_K_constant(h.p_degree_part(0), freq, guard);
  g.S = fix_S_constant(h.p_degree_part(1), freq, guard);
  return g;
}

PoissonSeries lie_derivative(const PoissonSeries& f,
                             const GeneratingFunction& chi) {
  PoissonSeries r = poisson_bracket(f, chi.series_part());
  for (std::size_t d = 0; d < chi.K.size(); ++d) {
    if (chi.K[d].empty()) continue;
    r = r - chi.K[d] * f.derivative_p(static_cast<int>(d));
  }
  return r;
}

PoissonSeries lie_transform(const PoissonSeries& f,
                            const GeneratingFunction& chi) {
  if (chi.grade < 1)
    throw Error("lie_transform: generator grade must be >= 1");
  PoissonSeries acc = f;
  PoissonSeries term = f;
  for (long long j = 1; !term.empty(); ++j) {
    term = lie_derivative(term, chi);
    term = term.scaled_frac(1, j);
    acc = acc + term;
  }
  return acc;
}

PoissonSeries transform_coordinates(const std::vector<GeneratingFunction>& ledger,
                                    Coordinate coord, int dof, int n_dof,
                                    Mode mode, int eps_cutoff) {
  PoissonSeries delta(n_dof, mode, eps_cutoff);
  for (const GeneratingFunction& chi : ledger) {
    if (chi.grade < 1)
      throw Error("transform_coordinates: generator grade must be >= 1");
    // image of the bare coordinate: sum_{j>=1} (1/j!) L_chi^j c
    PoissonSeries g(n_dof, mode, eps_cutoff);
    if (coord == Coordinate::q) {
      g = chi.trig.derivative_p(dof);
      if (!chi.S.empty()) g = g + chi.S[dof];
    } else {
      g = -chi.trig.derivative_q(dof);
      if (!chi.K.empty()) g = g - chi.K[dof];
    }
    PoissonSeries bare = g;
    PoissonSeries term = g;
    for (long long j = 2; !term.empty(); ++j) {
      term = lie_derivative(term, chi);
      term = term.scaled_frac(1, j);
      bare = bare + term;
    }
    delta = bare + lie_transform(delta, chi);
  }
  return delta;
}

}  // namespace pnf
