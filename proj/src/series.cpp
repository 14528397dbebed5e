#include "pnf/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace pnf {

PoissonSeries::PoissonSeries(int n_dof, Mode mode, int eps_cutoff, int p_cutoff)
    : n_dof_(n_dof), mode_(mode), eps_cutoff_(eps_cutoff), p_cutoff_(p_cutoff) {
  if (n_dof < 1) throw Error("PoissonSeries: n_dof must be >= 1");
  if (eps_cutoff < 0) throw Error("PoissonSeries: eps_cutoff must be >= 0");
}

void PoissonSeries::add_term(TermKey key, Scalar coeff) {
  if (static_cast<int>(key.p_exp.size()) != n_dof_ ||
      static_cast<int>(key.wave.size()) != n_dof_ ||
      static_cast<int>(key.pm.j0_exp2.size()) != n_dof_)
    throw Error("PoissonSeries: term dimension mismatch");
  if (key.eps < 0) throw Error("PoissonSeries: negative epsilon order");
  if (coeff.mode() != mode_)
    throw Error("PoissonSeries: term mode differs from series mode");
  if (key.eps > eps_cutoff_) return;
  if (p_cutoff_ >= 0) {
    int deg = std::accumulate(key.p_exp.begin(), key.p_exp.end(), 0);
    if (deg > p_cutoff_) return;
  }
  for (int e : key.p_exp)
    if (e < 0) throw Error("PoissonSeries: negative momentum exponent");

  // canonical wave: first nonzero component positive
  for (int d = 0; d < n_dof_; ++d) {
    if (key.wave[d] == 0) continue;
    if (key.wave[d] < 0) {
      for (int& k : key.wave) k = -k;
      if (key.trig == Trig::sin) coeff = -coeff;
    }
    break;
  }
  bool zero_wave =
      std::all_of(key.wave.begin(), key.wave.end(), [](int k) { return k == 0; });
  if (zero_wave && key.trig == Trig::sin) return;  // sin(0) = 0
  if (zero_wave) key.trig = Trig::cos;

  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.negligible()) terms_.erase(it);
  } else if (it->second.negligible()) {
    terms_.erase(it);
  }
}

void PoissonSeries::add_term(int eps, ParamMonomial pm, std::vector<int> p_exp,
                             Trig trig, std::vector<int> wave, Scalar coeff) {
  TermKey key;
  key.eps = eps;
  key.pm = std::move(pm);
  key.p_exp = std::move(p_exp);
  key.trig = trig;
  key.wave = std::move(wave);
  add_term(std::move(key), std::move(coeff));
}

void PoissonSeries::add_const(int eps, ParamMonomial pm, Scalar coeff) {
  add_term(eps, std::move(pm), std::vector<int>(n_dof_, 0), Trig::cos,
           std::vector<int>(n_dof_, 0), std::move(coeff));
}

void PoissonSeries::check_compatible(const PoissonSeries& o) const {
  if (n_dof_ != o.n_dof_)
    throw Error("PoissonSeries: operands have different n_dof");
  if (mode_ != o.mode_)
    throw Error("PoissonSeries: mixing exact and numeric series");
}

PoissonSeries PoissonSeries::operator-() const {
  PoissonSeries r(*this);
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

PoissonSeries operator+(const PoissonSeries& x, const PoissonSeries& y) {
  x.check_compatible(y);
  PoissonSeries r(x.n_dof_, x.mode_, std::min(x.eps_cutoff_, y.eps_cutoff_),
                  x.p_cutoff_ < 0   ? y.p_cutoff_
                  : y.p_cutoff_ < 0 ? x.p_cutoff_
                                    : std::min(x.p_cutoff_, y.p_cutoff_));
  for (const auto& [k, c] : x.terms_) r.add_term(k, c);
  for (const auto& [k, c] : y.terms_) r.add_term(k, c);
  return r;
}

PoissonSeries operator-(const PoissonSeries& x, const PoissonSeries& y) {
  return x + (-y);
}

PoissonSeries operator*(const PoissonSeries& x, const PoissonSeries& y) {
  x.check_compatible(y);
  PoissonSeries r(x.n_dof_, x.mode_, std::min(x.eps_cutoff_, y.eps_cutoff_),
                  x.p_cutoff_ < 0   ? y.p_cutoff_
                  : y.p_cutoff_ < 0 ? x.p_cutoff_
                                    : std::min(x.p_cutoff_, y.p_cutoff_));
  const Scalar half = x.mode_ == Mode::exact ? Scalar::exact_frac(1, 2)
                                             : Scalar::numeric(0.5);
  const int n = x.n_dof_;
  std::vector<int> kd(n), ks(n), pe(n);
  for (const auto& [ka, ca] : x.terms_) {
    for (const auto& [kb, cb] : y.terms_) {
      int eps = ka.eps + kb.eps;
      if (eps > r.eps_cutoff_) continue;
      Scalar c = ca * cb * half;
      ParamMonomial pm = ka.pm * kb.pm;
      for (int d = 0; d < n; ++d) {
        pe[d] = ka.p_exp[d] + kb.p_exp[d];
        kd[d] = ka.wave[d] - kb.wave[d];
        ks[d] = ka.wave[d] + kb.wave[d];
      }
      // product-to-sum over the difference and sum waves
      if (ka.trig == Trig::cos && kb.trig == Trig::cos) {
        r.add_term(eps, pm, pe, Trig::cos, kd, c);
        r.add_term(eps, pm, pe, Trig::cos, ks, c);
      } else if (ka.trig == Trig::sin && kb.trig == Trig::sin) {
        r.add_term(eps, pm, pe, Trig::cos, kd, c);
        r.add_term(eps, pm, pe, Trig::cos, ks, -c);
      } else if (ka.trig == Trig::sin && kb.trig == Trig::cos) {
        r.add_term(eps, pm, pe, Trig::sin, kd, c);
        r.add_term(eps, pm, pe, Trig::sin, ks, c);
      } else {
        r.add_term(eps, pm, pe, Trig::sin, kd, -c);
        r.add_term(eps, pm, pe, Trig::sin, ks, c);
      }
    }
  }
  return r;
}

PoissonSeries PoissonSeries::scaled(const Scalar& c) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) r.add_term(k, v * c);
  return r;
}

PoissonSeries PoissonSeries::scaled_frac(long long num, long long den) const {
  return scaled(mode_ == Mode::exact
                    ? Scalar::exact_frac(num, den)
                    : Scalar::numeric(static_cast<double>(num) /
                                      static_cast<double>(den)));
}

PoissonSeries PoissonSeries::mul_param(const ParamMonomial& pm) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    TermKey key = k;
    key.pm *= pm;
    r.add_term(std::move(key), v);
  }
  return r;
}

PoissonSeries PoissonSeries::shift_eps(int k) const {
  if (k < 0) throw Error("PoissonSeries: negative epsilon shift");
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [key, v] : terms_) {
    TermKey nk = key;
    nk.eps += k;
    r.add_term(std::move(nk), v);
  }
  return r;
}

PoissonSeries PoissonSeries::truncated(int eps_cutoff) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff, p_cutoff_);
  for (const auto& [k, v] : terms_) r.add_term(k, v);
  return r;
}

PoissonSeries PoissonSeries::derivative_q(int dof) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    if (k.wave[dof] == 0) continue;
    TermKey key = k;
    Scalar c = v;
    c.mul_int(k.wave[dof]);
    if (k.trig == Trig::cos) {
      key.trig = Trig::sin;
      c = -c;
    } else {
      key.trig = Trig::cos;
    }
    r.add_term(std::move(key), std::move(c));
  }
  return r;
}

PoissonSeries PoissonSeries::derivative_p(int dof) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    if (k.p_exp[dof] == 0) continue;
    TermKey key = k;
    Scalar c = v;
    c.mul_int(k.p_exp[dof]);
    key.p_exp[dof] -= 1;
    r.add_term(std::move(key), std::move(c));
  }
  return r;
}

PoissonSeries PoissonSeries::derivative_j0(int dof) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    int e2 = k.pm.j0_exp2[dof];
    if (e2 == 0) continue;
    TermKey key = k;
    key.pm.j0_exp2[dof] -= 2;
    Scalar c = v;
    c.mul_int(e2);
    c.div_int(2);
    r.add_term(std::move(key), std::move(c));
  }
  return r;
}

PoissonSeries PoissonSeries::eps_part(int order) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_)
    if (k.eps == order) r.add_term(k, v);
  return r;
}

PoissonSeries PoissonSeries::angle_average() const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    bool zero = std::all_of(k.wave.begin(), k.wave.end(),
                            [](int w) { return w == 0; });
    if (zero) r.add_term(k, v);
  }
  return r;
}

PoissonSeries PoissonSeries::p_degree_part(int degree) const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    int deg = std::accumulate(k.p_exp.begin(), k.p_exp.end(), 0);
    if (deg == degree) r.add_term(k, v);
  }
  return r;
}

PoissonSeries PoissonSeries::without_constants() const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    bool zero_wave = std::all_of(k.wave.begin(), k.wave.end(),
                                 [](int w) { return w == 0; });
    bool zero_p = std::all_of(k.p_exp.begin(), k.p_exp.end(),
                              [](int e) { return e == 0; });
    if (zero_wave && zero_p) continue;
    r.add_term(k, v);
  }
  return r;
}

int PoissonSeries::min_eps_order() const {
  int m = eps_cutoff_ + 1;
  for (const auto& [k, v] : terms_) m = std::min(m, k.eps);
  return m;
}

int PoissonSeries::max_wave_norm() const {
  int m = 0;
  for (const auto& [k, v] : terms_) {
    int n = 0;
    for (int w : k.wave) n += std::abs(w);
    m = std::max(m, n);
  }
  return m;
}

int PoissonSeries::max_p_degree() const {
  int m = 0;
  for (const auto& [k, v] : terms_)
    m = std::max(m, std::accumulate(k.p_exp.begin(), k.p_exp.end(), 0));
  return m;
}

int PoissonSeries::max_j0_exp2(int dof) const {
  int m = 0;
  bool any = false;
  for (const auto& [k, v] : terms_) {
    if (!any || k.pm.j0_exp2[dof] > m) m = k.pm.j0_exp2[dof];
    any = true;
  }
  return m;
}

double PoissonSeries::evaluate(const EvalContext& ctx) const {
  double total = 0.0;
  for (const auto& [k, v] : terms_) {
    double x = v.to_double();
    if (k.eps != 0) x *= std::pow(ctx.eps, k.eps);
    if (k.pm.omega_exp != 0) x *= std::pow(ctx.omega, k.pm.omega_exp);
    if (k.pm.omega0_exp != 0) x *= std::pow(ctx.omega0, k.pm.omega0_exp);
    for (int d = 0; d < n_dof_; ++d) {
      if (k.pm.j0_exp2[d] != 0) {
        if (static_cast<int>(ctx.j0.size()) <= d)
          throw Error("evaluate: missing J0 binding");
        x *= std::pow(ctx.j0[d], 0.5 * k.pm.j0_exp2[d]);
      }
      if (k.p_exp[d] != 0) {
        if (static_cast<int>(ctx.p.size()) <= d)
          throw Error("evaluate: missing p binding");
        x *= std::pow(ctx.p[d], k.p_exp[d]);
      }
    }
    double phase = 0.0;
    bool has_wave = false;
    for (int d = 0; d < n_dof_; ++d) {
      if (k.wave[d] != 0) {
        if (static_cast<int>(ctx.q.size()) <= d)
          throw Error("evaluate: missing q binding");
        phase += k.wave[d] * ctx.q[d];
        has_wave = true;
      }
    }
    if (has_wave || k.trig == Trig::sin)
      x *= k.trig == Trig::cos ? std::cos(phase) : std::sin(phase);
    total += x;
  }
  return total;
}

PoissonSeries PoissonSeries::value_at_zero_angle() const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    if (k.trig == Trig::sin) continue;
    TermKey key = k;
    std::fill(key.wave.begin(), key.wave.end(), 0);
    r.add_term(std::move(key), v);
  }
  return r;
}

PoissonSeries PoissonSeries::at_zero_p() const {
  PoissonSeries r(n_dof_, mode_, eps_cutoff_, p_cutoff_);
  for (const auto& [k, v] : terms_) {
    bool zero_p = std::all_of(k.p_exp.begin(), k.p_exp.end(),
                              [](int e) { return e == 0; });
    if (zero_p) r.add_term(k, v);
  }
  return r;
}

std::vector<Term> PoissonSeries::sorted_terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, v] : terms_) out.push_back({k, v});
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    if (x.key.eps != y.key.eps) return x.key.eps < y.key.eps;
    int nx = 0, ny = 0;
    for (int w : x.key.wave) nx += std::abs(w);
    for (int w : y.key.wave) ny += std::abs(w);
    if (nx != ny) return nx < ny;
    if (x.key.wave != y.key.wave) return x.key.wave < y.key.wave;
    if (x.key.p_exp != y.key.p_exp) return x.key.p_exp < y.key.p_exp;
    if (x.key.trig != y.key.trig) return x.key.trig == Trig::cos;
    return x.key.pm < y.key.pm;
  });
  return out;
}

PoissonSeries poisson_bracket(const PoissonSeries& f, const PoissonSeries& g) {
  PoissonSeries r = f.derivative_q(0) * g.derivative_p(0) -
                    f.derivative_p(0) * g.derivative_q(0);
  for (int d = 1; d < f.n_dof(); ++d)
    r = r + f.derivative_q(d) * g.derivative_p(d) -
        f.derivative_p(d) * g.derivative_q(d);
  return r;
}

}  // namespace pnf
