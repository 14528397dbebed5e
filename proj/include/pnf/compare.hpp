#pragma once

#include "pnf/models.hpp"

#include <iosfwd>
#include <vector>

namespace pnf {

struct CompareCase {
  double eps = 1.0;
  double omega0 = 1.0;
  double omega = 1.0;
};

struct CompareOptions {
  int order = 4;
  double t_max = 100.0;
  int samples = 2000;
  /// Fraction of the window discarded before the linear fit.
  double fit_skip = 0.1;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Per-case outcome: the two error curves against the numerical reference
/// and their summary statistics.
struct CaseReport {
  CompareCase params;
  double j0 = 0.0;       ///< amplitude recovered from the detuning
  double omega_b = 0.0;  ///< frequency of the scheme-B solution at j0
  int order = 0;
  std::vector<double> t;
  std::vector<double> err_b, err_k;
  double max_err_b = 0.0, max_err_k = 0.0;
  LinearFit fit_b, fit_k;
};

/// Run the full pipeline for each case: invert the torus-fixing frequency
/// map for J0, evaluate the order-R solutions of both Lindstedt schemes,
/// integrate the exact equations of motion from (q = 0, J = J0), and sample
/// the absolute angle differences.  The model must be exact-mode with a
/// symbolic unperturbed frequency.
std::vector<CaseReport> compare_errors(const OscillatorModel& model,
                                       const std::vector<CompareCase>& cases,
                                       const CompareOptions& opts = {});

/// Least-squares line through (t, e) for t >= t_min.
LinearFit linear_fit(const std::vector<double>& t,
                     const std::vector<double>& e, double t_min);

/// Least-squares line through the per-period maxima of an oscillating error
/// signal: the samples in [t_min, t_max] are cut into complete blocks of
/// length `period` and the largest sample of each block is fitted.  The
/// growth trend of |dq| is linear while the signal itself swings with the
/// orbital phase, so fitting raw samples understates the fit quality.
LinearFit envelope_fit(const std::vector<double>& t,
                       const std::vector<double>& e, double t_min,
                       double period);

/// Plot-ready CSV: a key=value comment block, then t,err_scheme_B,err_scheme_K.
void write_error_csv(std::ostream& os, const CaseReport& report);

/// Human-readable key=value summary of one case.
void write_case_summary(std::ostream& os, const CaseReport& report);

}  // namespace pnf
