#pragma once

#include "pnf/models.hpp"
#include "pnf/series.hpp"

#include <string>
#include <vector>

namespace pnf {

/// Raised when a homological solve hits a small or forbidden divisor, or
/// when wave numbers run past the configured bound.
class DivisorError : public Error {
 public:
  DivisorError(const std::string& what, std::vector<int> wave)
      : Error(what), wave(std::move(wave)) {}
  std::vector<int> wave;
};

/// Limits applied during homological solves.
struct DivisorGuard {
  /// Minimum |k . omega| accepted, relative to |omega|.
  double min_divisor_rel = 1e-12;
  /// Largest accepted wave 1-norm; 0 disables the check.
  int max_wave = 0;
};

/// Guard sized for a normalization of the given order: wave numbers may at
/// most double per order relative to the input series.
DivisorGuard make_divisor_guard(const PoissonSeries& input, int order);

/// Generating function chi = X + sum_d K_d q_d + sum_d S_d p_d, where X is a
/// Poisson series and K_d, S_d are parameter-only series.  The q-linear part
/// is kept separate because a bare q_d factor is not a Poisson term; its
/// brackets are handled specially ({p_d, K q} = -K_d, {w p, K q} = -w K).
struct GeneratingFunction {
  enum class Kind { angle_only, linear_in_p, birkhoff_mixed };
  Kind kind = Kind::angle_only;
  int grade = 0;  ///< epsilon order carried by every term
  PoissonSeries trig;
  std::vector<PoissonSeries> K;  ///< per-dof q_d coefficients (may be empty series)
  std::vector<PoissonSeries> S;  ///< per-dof p_d coefficients

  /// trig + sum_d S_d p_d as a single series (the representable part).
  PoissonSeries series_part() const;
  bool has_K() const;
  bool has_S() const;
};

/// Divide each nonzero-wave term of h by the divisor k . omega, turning
/// cos(k q) into sin(k q)/(k . omega) and sin(k q) into -cos(k q)/(k . omega).
/// This solves {omega . p, X} + h = <h> for X term by term at any momentum
/// degree.  Zero-wave terms of h are skipped.
PoissonSeries solve_oscillator_homological(const PoissonSeries& h,
                                           const FrequencySpec& freq,
                                           const DivisorGuard& guard);

/// Angle-only homological solve: as above, but h must be momentum-free.
/// Returns a Kind::angle_only generator with K fixed so that the momentum
/// flow correction vanishes at q = 0 (K_d = -sum_k A_k k_d/(k . omega) over
/// the cosine coefficients A_k of h).
GeneratingFunction solve_homological_angle(const PoissonSeries& h,
                                           const FrequencySpec& freq,
                                           const DivisorGuard& guard);

/// p-linear homological solve: h must be linear in the momenta and have zero
/// angle average (error otherwise).  Returns Kind::linear_in_p with S fixed
/// so that the angle flow correction vanishes at q = 0 (S_d = sum_k
/// B_{d,k}/(k . omega) over the sine coefficients of the p_d part of h).
GeneratingFunction solve_homological_linear(const PoissonSeries& h,
                                            const FrequencySpec& freq,
                                            const DivisorGuard& guard);

/// Homological solve for a remainder of mixed momentum degree, as one
/// generator per order: divisors act on every angle-dependent term, K comes
/// from the momentum-free cosine part and S from the p-linear sine part.
GeneratingFunction solve_homological_mixed(const PoissonSeries& h,
                                           const FrequencySpec& freq,
                                           const DivisorGuard& guard);

/// K_d = -sum over cosine terms of h of c k_d/(k . omega).
std::vector<PoissonSeries> fix_K_constant(const PoissonSeries& h,
                                          const FrequencySpec& freq,
                                          const DivisorGuard& guard);

/// S_d = sum over sine terms of the p_d-linear part of h of c/(k . omega).
std::vector<PoissonSeries> fix_S_constant(const PoissonSeries& h,
                                          const FrequencySpec& freq,
                                          const DivisorGuard& guard);

/// One application of the Lie derivative L_chi f = {f, chi}, including the
/// special bracket of the q-linear part.
PoissonSeries lie_derivative(const PoissonSeries& f,
                             const GeneratingFunction& chi);

/// exp(L_chi) f = sum_j (1/j!) L_chi^j f, truncated by the epsilon cutoff of
/// f.  The generator grade must be >= 1 so the sum terminates.
PoissonSeries lie_transform(const PoissonSeries& f,
                            const GeneratingFunction& chi);

enum class Coordinate { q, p };

/// Express an old coordinate in the new variables of a transformation ledger:
/// returns delta such that old = new + delta, with the ledger applied in
/// forward step order (innermost generator first).
PoissonSeries transform_coordinates(const std::vector<GeneratingFunction>& ledger,
                                    Coordinate coord, int dof, int n_dof,
                                    Mode mode, int eps_cutoff);

}  // namespace pnf
