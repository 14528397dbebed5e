#pragma once

#include "pnf/lie.hpp"
#include "pnf/models.hpp"

#include <map>
#include <vector>

namespace pnf {

/// Hamiltonian with pending counterterms.  base carries the concrete terms;
/// sym[i][d] carries the image of the order-i placeholder eps^i p_d under
/// every transformation applied so far.  Once the order-i counterterm value
/// is known it multiplies sym[i][d] into base and the placeholder is
/// consumed.
struct CountertermHamiltonian {
  PoissonSeries base;
  std::map<int, std::vector<PoissonSeries>> sym;
};

/// Swap the unperturbed frequency of the epsilon^0 momentum-linear term for
/// the target frequency and attach one counterterm placeholder per order
/// 1..orders.  The unperturbed frequency symbol may appear nowhere else in
/// the input (error otherwise), and with a numeric input the epsilon^0 part
/// must consist of the linear term alone.
CountertermHamiltonian substitute_frequency_series(const PoissonSeries& H,
                                                   const FrequencySpec& target,
                                                   int orders);

/// Record of one completed normalization step.
struct KolmogorovStep {
  /// Counterterm value per dof, as a parameter-only series.
  std::vector<PoissonSeries> a;
  GeneratingFunction chi1, chi2;
  /// Order-r energy constant <h_{r,0}> - omega . K.
  PoissonSeries c_r;
};

/// One step of the iteration at order r: fix the counterterm from the angle
/// average of the momentum-linear part, kill the momentum-free angle terms
/// with an angle generator, then the momentum-linear angle terms with a
/// p-linear generator.  Divisors involve the target frequency only.
KolmogorovStep kolmogorov_step(CountertermHamiltonian& H, int r,
                               const FrequencySpec& freq,
                               const DivisorGuard& guard);

struct KolmogorovResult {
  int order = 0;
  /// Substituted starting Hamiltonian (placeholders excluded).
  PoissonSeries initial;
  /// Through the requested order: every angle- or momentum-dependent term
  /// has momentum degree >= 2, apart from the epsilon^0 linear term.
  PoissonSeries normal_form;
  /// Terms above the construction order, kept for diagnostics.
  PoissonSeries remainder_head;
  std::vector<KolmogorovStep> steps;
  /// chi1^(1), chi2^(1), chi1^(2), ... in application order.
  std::vector<GeneratingFunction> ledger;
  /// Energy constants at epsilon order r, index r-1; equal to steps[r-1].c_r.
  std::vector<PoissonSeries> constants;
  /// Per dof: sum_r eps^r a_r, the full counterterm series of the run.
  std::vector<PoissonSeries> counterterm;
};

/// eps_cutoff = 0 runs the transforms one order past `order` so that the
/// leading remainder terms are available in the result.
KolmogorovResult kolmogorov_normalize(const OscillatorModel& model, int order,
                                      const FrequencySpec& target,
                                      const DivisorGuard* guard = nullptr,
                                      int eps_cutoff = 0);

/// initial plus counterterm . p: the starting Hamiltonian of a finished run
/// with every counterterm value folded in.
PoissonSeries resolved_initial_hamiltonian(const KolmogorovResult& run);

/// Closed-form image of one step, assembled from the pre-step Hamiltonian
/// and the step generators by the explicit double sums the iteration
/// satisfies, not by exponentiating.  H_prev must be fully resolved.  The
/// result covers epsilon orders 1..k_max at momentum degrees 0..i_max and is
/// cross-checked in the tests against the sequential transform.
PoissonSeries closed_form_step_image(const PoissonSeries& H_prev,
                                     const GeneratingFunction& chi1,
                                     const GeneratingFunction& chi2,
                                     const FrequencySpec& freq, int r,
                                     int k_max, int i_max);

}  // namespace pnf
