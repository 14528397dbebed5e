#include "pnf/birkhoff.hpp"

#include "pnf/prep.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace pnf {

namespace {

bool pure_constant(const TermKey& key) {
  return std::all_of(key.wave.begin(), key.wave.end(),
                     [](int w) { return w == 0; }) &&
         std::all_of(key.p_exp.begin(), key.p_exp.end(),
                     [](int e) { return e == 0; });
}

}  // namespace

PoissonSeries split_constants(const PoissonSeries& h,
                              std::vector<PoissonSeries>& constants) {
  PoissonSeries rest(h.n_dof(), h.mode(), h.eps_cutoff(), h.p_cutoff());
  for (const auto& [key, c] : h.terms()) {
    if (key.eps >= 1 && pure_constant(key)) {
      while (static_cast<int>(constants.size()) < key.eps)
        constants.emplace_back(h.n_dof(), h.mode(), h.eps_cutoff());
      constants[key.eps - 1].add_term(key, c);
    } else {
      rest.add_term(key, c);
    }
  }
  return rest;
}

BirkhoffResult birkhoff_normalize(const OscillatorModel& model, int order,
                                  const DivisorGuard* guard_in,
                                  int eps_cutoff) {
  if (order < 1) throw Error("birkhoff_normalize: order must be positive");
  const int cutoff = eps_cutoff > 0 ? eps_cutoff : order + 1;
  if (cutoff < order)
    throw Error("birkhoff_normalize: cutoff below the construction order");

  PoissonSeries H = drop_energy_offset(
      translate_and_expand(to_action_angle(model, cutoff), cutoff,
                           /*keep_constants=*/true));
  const DivisorGuard guard =
      guard_in ? *guard_in : make_divisor_guard(H, order);

  BirkhoffResult out;
  out.order = order;
  for (int n = 1; n <= order; ++n) {
    PoissonSeries part = H.eps_part(n);
    const auto& terms = part.terms();
    bool oscillating = std::any_of(
        terms.begin(), terms.end(), [](const auto& t) {
          return std::any_of(t.first.wave.begin(), t.first.wave.end(),
                             [](int w) { return w != 0; });
        });
    if (!oscillating) continue;
    GeneratingFunction chi = solve_homological_mixed(part, model.omega0, guard);
    H = lie_transform(H, chi);
    out.ledger.push_back(std::move(chi));
  }

  for (int n = 1; n <= order; ++n) {
    const PoissonSeries part = H.eps_part(n);
    for (const auto& [key, c] : part.terms())
      if (std::any_of(key.wave.begin(), key.wave.end(),
                      [](int w) { return w != 0; })) {
        std::ostringstream os;
        os << "birkhoff_normalize: angle dependence survived at order " << n;
        throw Error(os.str());
      }
  }

  out.constants.assign(order, PoissonSeries(H.n_dof(), H.mode(), cutoff));
  out.normal_form = split_constants(H.truncated(order), out.constants);
  out.remainder_head = PoissonSeries(H.n_dof(), H.mode(), cutoff, H.p_cutoff());
  for (const auto& [key, c] : H.terms())
    if (key.eps > order) out.remainder_head.add_term(key, c);
  for (int d = 0; d < model.n_dof; ++d)
    out.frequency.push_back(
        out.normal_form.derivative_p(d).at_zero_p().value_at_zero_angle());
  return out;
}

}  // namespace pnf
