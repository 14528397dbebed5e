#pragma once

#include <random>
#include <vector>

#include "pnf/lie.hpp"
#include "pnf/series.hpp"

namespace pnf::testutil {

inline Scalar fr(long long num, long long den) {
  return Scalar::exact_frac(num, den);
}

inline Scalar s2(long long num, long long den) {
  return Scalar::exact_sqrt2_frac(num, den);
}

/// Coefficient of a single 1-dof term, zero when the term is absent.  The
/// lookup key must already be canonical (wave >= 0, constants as cos).
inline Scalar coeff_of(const PoissonSeries& s, int eps, int j0_exp2,
                       int omega_exp, int omega0_exp, int p_exp, Trig trig,
                       int wave) {
  TermKey key;
  key.eps = eps;
  key.pm = ParamMonomial(1);
  key.pm.j0_exp2[0] = j0_exp2;
  key.pm.omega_exp = omega_exp;
  key.pm.omega0_exp = omega0_exp;
  key.p_exp = {p_exp};
  key.trig = trig;
  key.wave = {wave};
  auto it = s.terms().find(key);
  return it == s.terms().end() ? Scalar::zero(s.mode()) : it->second;
}

/// Random exact-mode series on one dof, deterministic for a given engine
/// state.  Exponents and waves stay small so products remain cheap.
inline PoissonSeries random_series(std::mt19937& rng, int n_terms = 6,
                                   int eps_cutoff = 3) {
  std::uniform_int_distribution<int> eps_d(0, eps_cutoff);
  std::uniform_int_distribution<int> j0_d(0, 4);
  std::uniform_int_distribution<int> par_d(-1, 1);
  std::uniform_int_distribution<int> p_d(0, 2);
  std::uniform_int_distribution<int> wave_d(-3, 3);
  std::uniform_int_distribution<int> num_d(-8, 8);
  std::uniform_int_distribution<int> den_d(1, 7);
  std::uniform_int_distribution<int> coin(0, 3);

  PoissonSeries s(1, Mode::exact, eps_cutoff);
  for (int i = 0; i < n_terms; ++i) {
    ParamMonomial pm(1);
    pm.j0_exp2[0] = j0_d(rng);
    pm.omega_exp = par_d(rng);
    pm.omega0_exp = par_d(rng);
    long long num = num_d(rng);
    if (num == 0) num = 5;
    long long den = den_d(rng);
    Scalar c = coin(rng) == 0 ? s2(num, den) : fr(num, den);
    s.add_term(eps_d(rng), pm, {p_d(rng)},
               coin(rng) % 2 == 0 ? Trig::cos : Trig::sin, {wave_d(rng)}, c);
  }
  return s;
}

/// Random generating function cycling through the three kinds.  The trig part
/// carries eps order equal to the grade, as the solvers produce.
inline GeneratingFunction random_generator(std::mt19937& rng, int kind_sel,
                                           int eps_cutoff = 4) {
  std::uniform_int_distribution<int> grade_d(1, 2);
  std::uniform_int_distribution<int> j0_d(0, 3);
  std::uniform_int_distribution<int> wave_d(1, 3);
  std::uniform_int_distribution<int> num_d(-6, 6);
  std::uniform_int_distribution<int> den_d(1, 5);
  std::uniform_int_distribution<int> coin(0, 1);

  GeneratingFunction g;
  g.grade = grade_d(rng);
  const int kind = kind_sel % 3;
  g.kind = kind == 0   ? GeneratingFunction::Kind::angle_only
           : kind == 1 ? GeneratingFunction::Kind::linear_in_p
                       : GeneratingFunction::Kind::birkhoff_mixed;

  auto coeff = [&] {
    long long num = num_d(rng);
    if (num == 0) num = 3;
    return fr(num, den_d(rng));
  };
  auto param_series = [&] {
    PoissonSeries s(1, Mode::exact, eps_cutoff);
    ParamMonomial pm(1);
    pm.j0_exp2[0] = j0_d(rng);
    pm.omega_exp = -1;
    s.add_term(g.grade, pm, {0}, Trig::cos, {0}, coeff());
    return s;
  };

  PoissonSeries trig(1, Mode::exact, eps_cutoff);
  const int p_max = kind == 0 ? 0 : kind == 1 ? 1 : 2;
  for (int i = 0; i < 3; ++i) {
    ParamMonomial pm(1);
    pm.j0_exp2[0] = j0_d(rng);
    pm.omega_exp = -1;
    const int p_exp = kind == 1 ? 1 : std::uniform_int_distribution<int>(
                                          0, p_max)(rng);
    trig.add_term(g.grade, pm, {p_exp},
                  coin(rng) == 0 ? Trig::cos : Trig::sin, {wave_d(rng)},
                  coeff());
  }
  g.trig = trig;
  if (kind != 1 && coin(rng) == 0) g.K.push_back(param_series());
  if (kind != 0 && coin(rng) == 0) g.S.push_back(param_series());
  return g;
}

inline GeneratingFunction negated(const GeneratingFunction& g) {
  GeneratingFunction m = g;
  m.trig = -g.trig;
  for (auto& k : m.K) k = -k;
  for (auto& s : m.S) s = -s;
  return m;
}

}  // namespace pnf::testutil
