#pragma once

#include "pnf/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace pnf {

/// Monomial in the constant parameters of a construction: actions J0_d of the
/// reference torus (half-integer exponents, stored doubled), the target
/// frequency symbol w and the unperturbed frequency symbol w0 (integer
/// exponents, negative powers allowed).
struct ParamMonomial {
  std::vector<int> j0_exp2;  ///< per-dof exponent of J0_d, times 2
  int omega_exp = 0;         ///< exponent of the symbol w
  int omega0_exp = 0;        ///< exponent of the symbol w0

  explicit ParamMonomial(int n_dof = 0) : j0_exp2(n_dof, 0) {}

  static ParamMonomial unit(int n_dof) { return ParamMonomial(n_dof); }

  /// J0_d^(e2/2)
  static ParamMonomial j0_power(int n_dof, int dof, int e2) {
    ParamMonomial m(n_dof);
    m.j0_exp2[dof] = e2;
    return m;
  }

  ParamMonomial& operator*=(const ParamMonomial& o) {
    for (std::size_t d = 0; d < j0_exp2.size(); ++d) j0_exp2[d] += o.j0_exp2[d];
    omega_exp += o.omega_exp;
    omega0_exp += o.omega0_exp;
    return *this;
  }

  friend ParamMonomial operator*(ParamMonomial x, const ParamMonomial& y) {
    return x *= y;
  }

  bool trivial() const {
    if (omega_exp != 0 || omega0_exp != 0) return false;
    for (int e : j0_exp2)
      if (e != 0) return false;
    return true;
  }

  friend bool operator==(const ParamMonomial& x, const ParamMonomial& y) {
    return x.j0_exp2 == y.j0_exp2 && x.omega_exp == y.omega_exp &&
           x.omega0_exp == y.omega0_exp;
  }

  friend bool operator<(const ParamMonomial& x, const ParamMonomial& y) {
    if (x.j0_exp2 != y.j0_exp2) return x.j0_exp2 < y.j0_exp2;
    if (x.omega_exp != y.omega_exp) return x.omega_exp < y.omega_exp;
    return x.omega0_exp < y.omega0_exp;
  }
};

enum class Trig { cos, sin };

/// Canonical key of a series term.  The wave vector is kept canonical (first
/// nonzero component positive); sign flips are absorbed into the coefficient
/// by the series insertion routine.
struct TermKey {
  int eps = 0;                ///< epsilon order (>= 0)
  ParamMonomial pm;           ///< parameter monomial
  std::vector<int> p_exp;     ///< momentum exponents, one per dof
  Trig trig = Trig::cos;
  std::vector<int> wave;      ///< angle wave vector, one per dof

  friend bool operator<(const TermKey& x, const TermKey& y) {
    if (x.eps != y.eps) return x.eps < y.eps;
    if (x.wave != y.wave) return x.wave < y.wave;
    if (x.trig != y.trig) return x.trig < y.trig;
    if (x.p_exp != y.p_exp) return x.p_exp < y.p_exp;
    return x.pm < y.pm;
  }
  friend bool operator==(const TermKey& x, const TermKey& y) {
    return x.eps == y.eps && x.wave == y.wave && x.trig == y.trig &&
           x.p_exp == y.p_exp && x.pm == y.pm;
  }
};

struct Term {
  TermKey key;
  Scalar coeff;
};

/// Numeric bindings used when evaluating a series.
struct EvalContext {
  double eps = 0.0;
  double omega = 0.0;
  double omega0 = 0.0;
  std::vector<double> j0;
  std::vector<double> q;
  std::vector<double> p;
};

/// Truncated Poisson series: a finite sum of terms
///   coeff * eps^i * J0^m * w^a * w0^b * p^e * {cos|sin}(k . q)
/// over a fixed number of degrees of freedom, truncated at a fixed epsilon
/// order and optionally at a total momentum degree.
///
/// The term map is canonical: wave vectors have their first nonzero component
/// positive, sin terms with zero wave are dropped, zero coefficients are
/// removed.  All operations are pure and return new series; the only mutating
/// entry point is add_term, used to build a series up front.
class PoissonSeries {
 public:
  PoissonSeries() = default;
  PoissonSeries(int n_dof, Mode mode, int eps_cutoff, int p_cutoff = -1);

  int n_dof() const { return n_dof_; }
  Mode mode() const { return mode_; }
  int eps_cutoff() const { return eps_cutoff_; }
  int p_cutoff() const { return p_cutoff_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const std::map<TermKey, Scalar>& terms() const { return terms_; }

  /// Insert a term, canonicalizing the wave vector and accumulating into any
  /// existing term with the same key.  Terms beyond the cutoffs and terms
  /// with negligible coefficients are dropped.
  void add_term(TermKey key, Scalar coeff);
  void add_term(int eps, ParamMonomial pm, std::vector<int> p_exp, Trig trig,
                std::vector<int> wave, Scalar coeff);

  /// Constant term helper: eps^i * pm with no angle or momentum dependence.
  void add_const(int eps, ParamMonomial pm, Scalar coeff);

  PoissonSeries operator-() const;
  friend PoissonSeries operator+(const PoissonSeries& x, const PoissonSeries& y);
  friend PoissonSeries operator-(const PoissonSeries& x, const PoissonSeries& y);
  friend PoissonSeries operator*(const PoissonSeries& x, const PoissonSeries& y);

  PoissonSeries scaled(const Scalar& c) const;
  PoissonSeries scaled_frac(long long num, long long den) const;
  PoissonSeries mul_param(const ParamMonomial& pm) const;
  /// Shift every term's epsilon order by k (k >= 0).
  PoissonSeries shift_eps(int k) const;
  /// Re-truncate to a lower epsilon cutoff.
  PoissonSeries truncated(int eps_cutoff) const;

  /// Partial derivatives.
  PoissonSeries derivative_q(int dof) const;
  PoissonSeries derivative_p(int dof) const;
  /// d/dJ0_d; exponent rule on half-integer powers.
  PoissonSeries derivative_j0(int dof) const;

  /// Keep only terms with the given epsilon order / with wave zero.
  PoissonSeries eps_part(int order) const;
  PoissonSeries angle_average() const;
  /// Keep only terms with total momentum degree d.
  PoissonSeries p_degree_part(int degree) const;
  /// Drop terms with no angle, momentum, or epsilon dependence entirely
  /// (pure parameter constants).
  PoissonSeries without_constants() const;

  int min_eps_order() const;  ///< cutoff+1 when empty
  int max_wave_norm() const;  ///< max over terms of sum |k_d|
  int max_p_degree() const;
  /// Largest J0 exponent (doubled) appearing for the given dof.
  int max_j0_exp2(int dof) const;

  double evaluate(const EvalContext& ctx) const;
  /// Value of the series at angle q = 0 (cos -> 1, sin -> 0), as a series
  /// over the remaining variables.
  PoissonSeries value_at_zero_angle() const;
  /// Restrict to the zero section p = 0 (drop all p-dependent terms).
  PoissonSeries at_zero_p() const;

  /// Terms in the deterministic serialization order:
  /// (eps, sum |k_d|, wave lex, p_exp lex, cos before sin, params).
  std::vector<Term> sorted_terms() const;

  friend bool operator==(const PoissonSeries& x, const PoissonSeries& y) {
    return x.n_dof_ == y.n_dof_ && x.mode_ == y.mode_ && x.terms_ == y.terms_;
  }

 private:
  void check_compatible(const PoissonSeries& o) const;

  int n_dof_ = 0;
  Mode mode_ = Mode::exact;
  int eps_cutoff_ = 0;
  int p_cutoff_ = -1;  ///< -1: no momentum truncation
  std::map<TermKey, Scalar> terms_;
};

/// Canonical Poisson bracket {f, g} = sum_d (df/dq_d dg/dp_d - df/dp_d dg/dq_d).
PoissonSeries poisson_bracket(const PoissonSeries& f, const PoissonSeries& g);

}  // namespace pnf
