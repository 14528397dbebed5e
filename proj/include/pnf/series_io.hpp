#pragma once

#include "pnf/series.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace pnf {

/// JSON serialization.  Layout:
///   {"n_dof": 1, "mode": "exact", "eps_cutoff": 2, "p_cutoff": -1,
///    "terms": [{"eps": 1, "coeff": {...}, "j0_exp2": [...], "omega_exp": 0,
///               "omega0_exp": 0, "p_exp": [...], "trig": "cos",
///               "wave": [...]}, ...]}
/// Exact coefficients are {"a_num","a_den","b_num","b_den"} with decimal
/// string integers; numeric coefficients are {"value": <double>}.  Terms are
/// emitted in the deterministic sorted order, so serialization is canonical.
nlohmann::json series_to_json(const PoissonSeries& s);
PoissonSeries series_from_json(const nlohmann::json& j);

std::string series_to_string(const PoissonSeries& s);
PoissonSeries series_from_string(const std::string& text);

void save_series(const PoissonSeries& s, const std::string& path);
PoissonSeries load_series(const std::string& path);

/// Human-readable one-term-per-line rendering, e.g.
///   eps^2 * (-17/64) * J0^3 * w^-1 * cos(4 q)
/// Exact coefficients print as rationals with explicit sqrt2 factors.
std::string series_pretty(const PoissonSeries& s, const std::string& indent = "");

std::string term_pretty(const Term& t, int n_dof);

}  // namespace pnf
