#pragma once

#include "pnf/series.hpp"

#include <string>
#include <vector>

namespace pnf {

/// Which symbol (if any) carries the linear frequency of a series.  One
/// degree of freedom may use a symbolic frequency; multi-dof systems use
/// numeric frequency vectors.
struct FrequencySpec {
  enum class Kind { symbolic_omega0, symbolic_omega, numeric };
  Kind kind = Kind::symbolic_omega0;
  std::vector<Scalar> values;  ///< per-dof, numeric kind only

  static FrequencySpec omega0_symbol() { return {Kind::symbolic_omega0, {}}; }
  static FrequencySpec omega_symbol() { return {Kind::symbolic_omega, {}}; }
  static FrequencySpec numeric_values(std::vector<Scalar> v) {
    return {Kind::numeric, std::move(v)};
  }
  bool symbolic() const { return kind != Kind::numeric; }
};

/// One perturbation monomial c * eps^r * prod_d x_d^{a_d} p_d^{b_d}.
struct ModelTerm {
  int eps_power = 1;
  Scalar coeff;
  std::vector<int> x_exp;
  std::vector<int> p_exp;
};

/// A perturbed harmonic oscillator
///   H = sum_d omega0_d/2 (p_d^2 + x_d^2) + sum_terms c eps^r x^a p^b.
struct OscillatorModel {
  std::string name;
  int n_dof = 1;
  FrequencySpec omega0;
  std::vector<ModelTerm> terms;
};

/// H = w0/2 (p^2 + x^2) + eps x^4 / 4
OscillatorModel quartic_model(Mode mode);
/// H = w0/2 (p^2 + x^2) - eps x^3 / 3
OscillatorModel cubic_model(Mode mode);

/// Catalog lookup by name ("quartic", "cubic").
OscillatorModel builtin_model(const std::string& name, Mode mode);

/// Load a model definition file: JSON with keys
///   {"name": ..., "n_dof": 1, "omega0": "symbolic" | [numbers],
///    "terms": [{"eps_power": 1,
///               "coeff": {"num": -1, "den": 3, "sqrt2": false},
///               "x_exp": [3], "p_exp": [0]}, ...]}
/// Rational coefficients; "sqrt2": true multiplies by sqrt(2).
OscillatorModel load_model_file(const std::string& path, Mode mode);

}  // namespace pnf
