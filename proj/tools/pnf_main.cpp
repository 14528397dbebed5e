#include "pnf/birkhoff.hpp"
#include "pnf/compare.hpp"
#include "pnf/invert.hpp"
#include "pnf/kolmogorov.hpp"
#include "pnf/lindstedt.hpp"
#include "pnf/models.hpp"
#include "pnf/series_io.hpp"
#include "pnf/torus.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace pnf;

struct Options {
  std::string model = "quartic";
  std::string model_file;
  int order = 2;
  bool numeric = false;
  double eps = 0.0, omega0 = 0.0, omega = 0.0, j0 = 0.0;
  bool has_eps = false, has_omega0 = false, has_omega = false, has_j0 = false;
  std::string out;
  std::string scheme = "b";
  double t_max = 100.0;
  int samples = 2000;
};

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "Built-in model name (quartic, cubic)");
  sub->add_option("--model-file", o.model_file, "JSON model definition file");
  auto* ex = sub->add_flag("--exact", "Exact rational coefficients (default)");
  auto* nu = sub->add_flag("--numeric", o.numeric, "Double coefficients");
  ex->excludes(nu);
  nu->excludes(ex);
}

void add_binding_flags(CLI::App* sub, Options& o) {
  sub->add_option("--eps", o.eps, "Perturbation strength binding");
  sub->add_option("--omega0", o.omega0, "Unperturbed frequency binding");
  sub->add_option("--omega", o.omega, "Target frequency binding");
  sub->add_option("--j0", o.j0, "Torus amplitude binding");
}

void capture_presence(CLI::App* sub, Options& o) {
  o.has_eps = sub->count("--eps") > 0;
  o.has_omega0 = sub->count("--omega0") > 0;
  o.has_omega = sub->count("--omega") > 0;
  o.has_j0 = sub->count("--j0") > 0;
}

Mode run_mode(const Options& o) {
  return o.numeric ? Mode::numeric : Mode::exact;
}

/// Model with the numeric frequency binding folded in when running numeric.
OscillatorModel resolve_model(const Options& o) {
  OscillatorModel m = o.model_file.empty()
                          ? builtin_model(o.model, run_mode(o))
                          : load_model_file(o.model_file, run_mode(o));
  if (o.numeric) {
    if (o.has_omega0)
      m.omega0 = FrequencySpec::numeric_values(
          std::vector<Scalar>(m.n_dof, Scalar::numeric(o.omega0)));
    else if (m.omega0.symbolic())
      throw Error("numeric mode needs --omega0 (or a numeric model file)");
  }
  return m;
}

std::string model_hash(const OscillatorModel& m) {
  std::ostringstream os;
  os << m.name << '|' << m.n_dof << '|';
  switch (m.omega0.kind) {
    case FrequencySpec::Kind::symbolic_omega0: os << "w0"; break;
    case FrequencySpec::Kind::symbolic_omega: os << "w"; break;
    case FrequencySpec::Kind::numeric:
      for (const Scalar& v : m.omega0.values) os << v.str() << ',';
      break;
  }
  for (const ModelTerm& t : m.terms) {
    os << '|' << t.eps_power << ';' << t.coeff.str() << ';';
    for (int e : t.x_exp) os << e << ',';
    os << ';';
    for (int e : t.p_exp) os << e << ',';
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

json manifest(const std::string& method, const Options& o,
              const OscillatorModel& m) {
  json j;
  j["method"] = method;
  j["order"] = o.order;
  j["model"] = m.name;
  j["model_hash"] = model_hash(m);
  j["mode"] = o.numeric ? "numeric" : "exact";
  json b = json::object();
  if (o.has_eps) b["eps"] = o.eps;
  if (o.has_omega0) b["omega0"] = o.omega0;
  if (o.has_omega) b["omega"] = o.omega;
  if (o.has_j0) b["j0"] = o.j0;
  j["bindings"] = std::move(b);
  return j;
}

json series_list(const std::vector<PoissonSeries>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(series_to_json(s));
  return a;
}

json ledger_to_json(const std::vector<GeneratingFunction>& ledger) {
  json a = json::array();
  for (const auto& g : ledger) {
    json jg;
    switch (g.kind) {
      case GeneratingFunction::Kind::angle_only: jg["kind"] = "angle_only"; break;
      case GeneratingFunction::Kind::linear_in_p: jg["kind"] = "linear_in_p"; break;
      case GeneratingFunction::Kind::birkhoff_mixed:
        jg["kind"] = "mixed";
        break;
    }
    jg["grade"] = g.grade;
    jg["trig"] = series_to_json(g.trig);
    jg["K"] = series_list(g.K);
    jg["S"] = series_list(g.S);
    a.push_back(std::move(jg));
  }
  return a;
}

void write_result(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << doc.dump(2) << "\n";
}

std::string inline_series(const PoissonSeries& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const Term& t : s.sorted_terms()) {
    if (!out.empty()) out += " + ";
    out += term_pretty(t, s.n_dof());
  }
  return out;
}

void print_header(const Options& o, const OscillatorModel& m,
                  const std::string& method) {
  std::cout << "method: " << method << "\n"
            << "model: " << m.name << " (" << (o.numeric ? "numeric" : "exact")
            << "), order " << o.order << "\n";
}

void print_correction_list(const std::vector<PoissonSeries>& a) {
  for (std::size_t r = 0; r < a.size(); ++r)
    std::cout << "  a_" << r + 1 << " = " << inline_series(a[r]) << "\n";
}

void print_solution(const PoissonSeries& dq, const PoissonSeries& dj,
                    const std::string& phase) {
  std::cout << "solution q(t) = phi + dq(phi), J(t) = J0 + dj(phi), phi = "
            << phase << " t:\n";
  std::cout << "dq:\n" << series_pretty(dq, "  ");
  std::cout << "dj:\n" << series_pretty(dj, "  ");
}

int run_birkhoff(const Options& o) {
  OscillatorModel m = resolve_model(o);
  BirkhoffResult res = birkhoff_normalize(m, o.order);
  TorusOrbit orbit =
      orbit_from_ledger(res.ledger, m.n_dof, run_mode(o), o.order);

  print_header(o, m, "birkhoff");
  std::cout << "normal form:\n" << series_pretty(res.normal_form, "  ");
  std::cout << "frequency relation:\n  omega = "
            << inline_series(res.frequency[0]) << "\n";
  if (m.n_dof == 1)
    print_solution(orbit.delta_q[0], orbit.delta_j[0], "omega");

  json doc;
  doc["manifest"] = manifest("birkhoff", o, m);
  doc["normal_form"] = series_to_json(res.normal_form);
  doc["remainder_head"] = series_to_json(res.remainder_head);
  doc["frequency"] = series_list(res.frequency);
  doc["constants"] = series_list(res.constants);
  doc["ledger"] = ledger_to_json(res.ledger);
  doc["delta_q"] = series_list(orbit.delta_q);
  doc["delta_j"] = series_list(orbit.delta_j);
  write_result(o.out, doc);
  return 0;
}

int run_lindstedt(const Options& o) {
  OscillatorModel m = resolve_model(o);
  const bool scheme_k = o.scheme == "k";
  if (!scheme_k && o.scheme != "b")
    throw Error("--scheme must be b or k");
  if (o.numeric && scheme_k && !o.has_omega)
    throw Error("numeric lindstedt scheme k needs --omega");

  FrequencySpec target = FrequencySpec::omega_symbol();
  const FrequencySpec* target_ptr = nullptr;
  if (scheme_k && o.numeric) {
    target = FrequencySpec::numeric_values({Scalar::numeric(o.omega)});
    target_ptr = &target;
  }
  LindstedtResult res = lindstedt_run(
      m, scheme_k ? LindstedtScheme::k : LindstedtScheme::b, o.order,
      target_ptr);

  print_header(o, m, scheme_k ? "lindstedt (scheme k)" : "lindstedt (scheme b)");
  if (scheme_k) {
    std::cout << "frequency relation (implicit, divisors in the target "
                 "frequency):\n  omega0 = omega + sum_r eps^r a_r with\n";
  } else {
    std::cout << "frequency relation:\n  omega = omega0 - sum_r eps^r a_r "
                 "with\n";
  }
  print_correction_list(res.a);
  print_solution(res.dq, res.dj, scheme_k ? "omega" : "(omega0 - sum eps^r a_r)");

  json doc;
  doc["manifest"] = manifest(scheme_k ? "lindstedt-k" : "lindstedt-b", o, m);
  doc["a"] = series_list(res.a);
  doc["delta_q"] = series_list({res.dq});
  doc["delta_j"] = series_list({res.dj});
  write_result(o.out, doc);
  return 0;
}

int run_kolmogorov(const Options& o) {
  OscillatorModel m = resolve_model(o);
  if (o.numeric && !o.has_omega)
    throw Error("numeric kolmogorov needs --omega");
  FrequencySpec target =
      o.numeric ? FrequencySpec::numeric_values(std::vector<Scalar>(
                      m.n_dof, Scalar::numeric(o.omega)))
                : FrequencySpec::omega_symbol();

  KolmogorovResult res = kolmogorov_normalize(m, o.order, target);
  TorusOrbit orbit =
      orbit_from_ledger(res.ledger, m.n_dof, run_mode(o), o.order);

  print_header(o, m, "kolmogorov");
  std::cout << "normal form:\n" << series_pretty(res.normal_form, "  ");
  std::cout << "counterterms (omega0 = omega + sum_r eps^r a_r):\n";
  std::vector<PoissonSeries> a;
  for (const auto& step : res.steps) a.push_back(step.a[0]);
  print_correction_list(a);
  bool any_const = false;
  for (const auto& c : res.constants) any_const = any_const || !c.empty();
  if (any_const) {
    std::cout << "energy constants:\n";
    for (const auto& c : res.constants) std::cout << series_pretty(c, "  ");
  }
  if (m.n_dof == 1)
    print_solution(orbit.delta_q[0], orbit.delta_j[0], "omega");

  json doc;
  doc["manifest"] = manifest("kolmogorov", o, m);
  doc["initial"] = series_to_json(res.initial);
  doc["normal_form"] = series_to_json(res.normal_form);
  doc["remainder_head"] = series_to_json(res.remainder_head);
  doc["counterterm"] = series_list(res.counterterm);
  doc["constants"] = series_list(res.constants);
  doc["ledger"] = ledger_to_json(res.ledger);
  doc["delta_q"] = series_list(orbit.delta_q);
  doc["delta_j"] = series_list(orbit.delta_j);
  write_result(o.out, doc);
  return 0;
}

int run_invert(const Options& o) {
  if (!o.has_eps || !o.has_omega0 || !o.has_omega)
    throw Error("invert needs --eps, --omega0 and --omega");
  OscillatorModel m = resolve_model(o);
  FrequencySpec target = FrequencySpec::omega_symbol();
  const FrequencySpec* target_ptr = nullptr;
  FrequencySpec numeric_target;
  if (o.numeric) {
    numeric_target = FrequencySpec::numeric_values({Scalar::numeric(o.omega)});
    target_ptr = &numeric_target;
  }
  LindstedtResult lr =
      lindstedt_run(m, LindstedtScheme::k, o.order, target_ptr);
  FrequencyMap map{true, lr.a};
  const double j0 =
      invert_frequency_map(map, o.omega - o.omega0, o.eps, o.omega0);

  print_header(o, m, "invert");
  std::cout << std::setprecision(10) << "detuning: omega - omega0 = "
            << o.omega - o.omega0 << "\n"
            << "j0 = " << j0 << "\n";

  json doc;
  doc["manifest"] = manifest("invert", o, m);
  doc["j0"] = j0;
  doc["map"] = series_list(lr.a);
  write_result(o.out, doc);
  return 0;
}

int run_compare(const Options& o) {
  if (!o.has_eps || !o.has_omega0 || !o.has_omega)
    throw Error("compare needs --eps, --omega0 and --omega");
  if (o.numeric)
    throw Error("compare runs on the exact model; drop --numeric");
  OscillatorModel m = resolve_model(o);

  CompareOptions copts;
  copts.order = o.order;
  copts.t_max = o.t_max;
  copts.samples = o.samples;
  std::vector<CompareCase> cases{{o.eps, o.omega0, o.omega}};
  std::vector<CaseReport> reports = compare_errors(m, cases, copts);

  print_header(o, m, "compare");
  write_case_summary(std::cout, reports[0]);
  if (o.out.empty()) {
    write_error_csv(std::cout, reports[0]);
  } else {
    std::ofstream os(o.out);
    if (!os) throw Error("cannot open '" + o.out + "' for writing");
    write_error_csv(os, reports[0]);
    std::cout << "csv: " << o.out << "\n";
  }
  return 0;
}

int run_show(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  json doc;
  try {
    is >> doc;
  } catch (const json::exception& e) {
    throw Error(std::string("not a series file: ") + e.what());
  }
  if (doc.contains("terms")) {
    std::cout << series_pretty(series_from_json(doc));
    return 0;
  }
  if (doc.contains("manifest")) {
    std::cout << "manifest: " << doc["manifest"].dump() << "\n";
    for (const auto& [key, value] : doc.items()) {
      if (key == "manifest") continue;
      if (value.is_object() && value.contains("terms")) {
        std::cout << key << ":\n" << series_pretty(series_from_json(value), "  ");
      } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          const auto& el = value[i];
          if (el.is_object() && el.contains("terms")) {
            std::cout << key << "[" << i << "]:\n"
                      << series_pretty(series_from_json(el), "  ");
          }
        }
      } else {
        std::cout << key << ": " << value.dump() << "\n";
      }
    }
    return 0;
  }
  throw Error("'" + path + "' holds neither a series nor a result document");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Poisson series constructions for perturbed "
               "oscillators"};
  app.require_subcommand(1);

  Options ob, ol, ok, oi, oc;
  std::string show_path;

  auto* birkhoff = app.add_subcommand(
      "birkhoff", "Angle elimination with unperturbed-frequency divisors");
  add_model_flags(birkhoff, ob);
  add_binding_flags(birkhoff, ob);
  birkhoff->add_option("--order", ob.order, "Construction order");
  birkhoff->add_option("--out", ob.out, "Result file (JSON)");

  auto* lindstedt = app.add_subcommand(
      "lindstedt", "Quasi-periodic solution directly from the equations of "
                   "motion");
  add_model_flags(lindstedt, ol);
  add_binding_flags(lindstedt, ol);
  lindstedt->add_option("--order", ol.order, "Construction order");
  lindstedt->add_option("--out", ol.out, "Result file (JSON)");
  lindstedt->add_option("--scheme", ol.scheme,
                        "b: expand around omega0; k: fix the target frequency");

  auto* kolmogorov = app.add_subcommand(
      "kolmogorov", "Torus-fixing normalization with counterterms");
  add_model_flags(kolmogorov, ok);
  add_binding_flags(kolmogorov, ok);
  kolmogorov->add_option("--order", ok.order, "Construction order");
  kolmogorov->add_option("--out", ok.out, "Result file (JSON)");

  auto* invert = app.add_subcommand(
      "invert", "Amplitude of the torus with a given frequency");
  add_model_flags(invert, oi);
  add_binding_flags(invert, oi);
  oi.order = 4;
  invert->add_option("--order", oi.order, "Frequency-map order");
  invert->add_option("--out", oi.out, "Result file (JSON)");

  auto* compare = app.add_subcommand(
      "compare", "Error curves of both Lindstedt schemes against a "
                 "high-accuracy integration");
  add_model_flags(compare, oc);
  add_binding_flags(compare, oc);
  oc.order = 4;
  compare->add_option("--order", oc.order, "Construction order");
  compare->add_option("--out", oc.out, "CSV file");
  compare->add_option("--t-max", oc.t_max, "Integration window length");
  compare->add_option("--samples", oc.samples, "Sample count");

  auto* show =
      app.add_subcommand("show", "Pretty-print a serialized series or result");
  show->add_option("file", show_path, "Series or result JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(birkhoff)) {
      capture_presence(birkhoff, ob);
      return run_birkhoff(ob);
    }
    if (app.got_subcommand(lindstedt)) {
      capture_presence(lindstedt, ol);
      return run_lindstedt(ol);
    }
    if (app.got_subcommand(kolmogorov)) {
      capture_presence(kolmogorov, ok);
      return run_kolmogorov(ok);
    }
    if (app.got_subcommand(invert)) {
      capture_presence(invert, oi);
      return run_invert(oi);
    }
    if (app.got_subcommand(compare)) {
      capture_presence(compare, oc);
      return run_compare(oc);
    }
    if (app.got_subcommand(show)) return run_show(show_path);
  } catch (const pnf::DivisorError& e) {
    std::cerr << "error: " << e.what() << " (wave";
    for (int k : e.wave) std::cerr << ' ' << k;
    std::cerr << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
