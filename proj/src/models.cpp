#include "pnf/models.hpp"

#include <json.hpp>

#include <fstream>

namespace pnf {

namespace {

Scalar model_coeff(Mode mode, long long num, long long den, bool sqrt2) {
  if (mode == Mode::exact)
    return sqrt2 ? Scalar::exact_sqrt2_frac(num, den)
                 : Scalar::exact_frac(num, den);
  double v = static_cast<double>(num) / static_cast<double>(den);
  return Scalar::numeric(sqrt2 ? v * kSqrt2 : v);
}

}  // namespace

OscillatorModel quartic_model(Mode mode) {
  OscillatorModel m;
  m.name = "quartic";
  m.n_dof = 1;
  m.omega0 = FrequencySpec::omega0_symbol();
  m.terms.push_back({1, model_coeff(mode, 1, 4, false), {4}, {0}});
  return m;
}

OscillatorModel cubic_model(Mode mode) {
  OscillatorModel m;
  m.name = "cubic";
  m.n_dof = 1;
  m.omega0 = FrequencySpec::omega0_symbol();
  m.terms.push_back({1, model_coeff(mode, -1, 3, false), {3}, {0}});
  return m;
}

OscillatorModel builtin_model(const std::string& name, Mode mode) {
  if (name == "quartic") return quartic_model(mode);
  if (name == "cubic") return cubic_model(mode);
  throw Error("unknown model '" + name + "' (available: quartic, cubic)");
}

OscillatorModel load_model_file(const std::string& path, Mode mode) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("model file '" + path + "': " + e.what());
  }
  OscillatorModel m;
  m.name = j.value("name", std::string("custom"));
  m.n_dof = j.at("n_dof").get<int>();
  if (m.n_dof < 1) throw Error("model file: n_dof must be >= 1");
  const auto& w0 = j.at("omega0");
  if (w0.is_string()) {
    if (w0.get<std::string>() != "symbolic")
      throw Error("model file: omega0 must be \"symbolic\" or a number array");
    if (m.n_dof != 1)
      throw Error("model file: symbolic omega0 requires n_dof = 1");
    m.omega0 = FrequencySpec::omega0_symbol();
  } else {
    std::vector<Scalar> vals;
    for (const auto& v : w0) {
      if (v.is_number())
        vals.push_back(mode == Mode::exact
                           ? Scalar::exact_int(v.get<long long>())
                           : Scalar::numeric(v.get<double>()));
      else
        throw Error("model file: omega0 entries must be numbers");
    }
    if (static_cast<int>(vals.size()) != m.n_dof)
      throw Error("model file: omega0 length must equal n_dof");
    m.omega0 = FrequencySpec::numeric_values(std::move(vals));
  }
  for (const auto& jt : j.at("terms")) {
    ModelTerm t;
    t.eps_power = jt.at("eps_power").get<int>();
    if (t.eps_power < 1)
      throw Error("model file: eps_power must be >= 1");
    const auto& c = jt.at("coeff");
    t.coeff = model_coeff(mode, c.at("num").get<long long>(),
                          c.at("den").get<long long>(), c.value("sqrt2", false));
    t.x_exp = jt.at("x_exp").get<std::vector<int>>();
    t.p_exp = jt.at("p_exp").get<std::vector<int>>();
    if (static_cast<int>(t.x_exp.size()) != m.n_dof ||
        static_cast<int>(t.p_exp.size()) != m.n_dof)
      throw Error("model file: term exponent length must equal n_dof");
    for (int e : t.x_exp)
      if (e < 0) throw Error("model file: negative x exponent");
    for (int e : t.p_exp)
      if (e < 0) throw Error("model file: negative p exponent");
    m.terms.push_back(std::move(t));
  }
  return m;
}

}  // namespace pnf
