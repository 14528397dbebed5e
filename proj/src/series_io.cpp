#include "pnf/series_io.hpp"

#include <fstream>
#include <sstream>

namespace pnf {

namespace {

using nlohmann::json;

json coeff_to_json(const Scalar& c) {
  json j;
  if (c.mode() == Mode::exact) {
    std::ostringstream an, ad, bn, bd;
    an << numerator(c.rat_a());
    ad << denominator(c.rat_a());
    bn << numerator(c.rat_b());
    bd << denominator(c.rat_b());
    j["a_num"] = an.str();
    j["a_den"] = ad.str();
    j["b_num"] = bn.str();
    j["b_den"] = bd.str();
  } else {
    j["value"] = c.value();
  }
  return j;
}

Scalar coeff_from_json(const json& j, Mode mode) {
  if (mode == Mode::exact) {
    if (!j.contains("a_num"))
      throw Error("series JSON: exact series with non-exact coefficient");
    Rational a(BigInt(j.at("a_num").get<std::string>()),
               BigInt(j.at("a_den").get<std::string>()));
    Rational b(BigInt(j.at("b_num").get<std::string>()),
               BigInt(j.at("b_den").get<std::string>()));
    return Scalar::exact(a, b);
  }
  if (!j.contains("value"))
    throw Error("series JSON: numeric series with non-numeric coefficient");
  return Scalar::numeric(j.at("value").get<double>());
}

}  // namespace

json series_to_json(const PoissonSeries& s) {
  json j;
  j["n_dof"] = s.n_dof();
  j["mode"] = s.mode() == Mode::exact ? "exact" : "numeric";
  j["eps_cutoff"] = s.eps_cutoff();
  j["p_cutoff"] = s.p_cutoff();
  json terms = json::array();
  for (const Term& t : s.sorted_terms()) {
    json jt;
    jt["eps"] = t.key.eps;
    jt["coeff"] = coeff_to_json(t.coeff);
    jt["j0_exp2"] = t.key.pm.j0_exp2;
    jt["omega_exp"] = t.key.pm.omega_exp;
    jt["omega0_exp"] = t.key.pm.omega0_exp;
    jt["p_exp"] = t.key.p_exp;
    jt["trig"] = t.key.trig == Trig::cos ? "cos" : "sin";
    jt["wave"] = t.key.wave;
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j;
}

PoissonSeries series_from_json(const json& j) {
  Mode mode;
  std::string ms = j.at("mode").get<std::string>();
  if (ms == "exact")
    mode = Mode::exact;
  else if (ms == "numeric")
    mode = Mode::numeric;
  else
    throw Error("series JSON: unknown mode '" + ms + "'");
  PoissonSeries s(j.at("n_dof").get<int>(), mode, j.at("eps_cutoff").get<int>(),
                  j.value("p_cutoff", -1));
  for (const json& jt : j.at("terms")) {
    TermKey key;
    key.eps = jt.at("eps").get<int>();
    key.pm.j0_exp2 = jt.at("j0_exp2").get<std::vector<int>>();
    key.pm.omega_exp = jt.at("omega_exp").get<int>();
    key.pm.omega0_exp = jt.at("omega0_exp").get<int>();
    key.p_exp = jt.at("p_exp").get<std::vector<int>>();
    std::string trig = jt.at("trig").get<std::string>();
    if (trig == "cos")
      key.trig = Trig::cos;
    else if (trig == "sin")
      key.trig = Trig::sin;
    else
      throw Error("series JSON: unknown trig kind '" + trig + "'");
    key.wave = jt.at("wave").get<std::vector<int>>();
    s.add_term(std::move(key), coeff_from_json(jt.at("coeff"), mode));
  }
  return s;
}

std::string series_to_string(const PoissonSeries& s) {
  return series_to_json(s).dump(2) + "\n";
}

PoissonSeries series_from_string(const std::string& text) {
  return series_from_json(json::parse(text));
}

void save_series(const PoissonSeries& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << series_to_string(s);
}

PoissonSeries load_series(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << is.rdbuf();
  return series_from_string(buf.str());
}

std::string term_pretty(const Term& t, int n_dof) {
  std::ostringstream os;
  if (t.key.eps > 0) {
    os << "eps";
    if (t.key.eps > 1) os << "^" << t.key.eps;
    os << " * ";
  }
  os << "(" << t.coeff.str() << ")";
  for (int d = 0; d < n_dof; ++d) {
    int e2 = t.key.pm.j0_exp2[d];
    if (e2 == 0) continue;
    os << " * J0";
    if (n_dof > 1) os << "_" << d + 1;
    if (e2 != 2) {
      if (e2 % 2 == 0)
        os << "^" << e2 / 2;
      else
        os << "^(" << e2 << "/2)";
    }
  }
  if (t.key.pm.omega_exp != 0) {
    os << " * w";
    if (t.key.pm.omega_exp != 1) os << "^" << t.key.pm.omega_exp;
  }
  if (t.key.pm.omega0_exp != 0) {
    os << " * w0";
    if (t.key.pm.omega0_exp != 1) os << "^" << t.key.pm.omega0_exp;
  }
  for (int d = 0; d < n_dof; ++d) {
    int e = t.key.p_exp[d];
    if (e == 0) continue;
    os << " * p";
    if (n_dof > 1) os << "_" << d + 1;
    if (e != 1) os << "^" << e;
  }
  bool zero_wave = true;
  for (int k : t.key.wave)
    if (k != 0) zero_wave = false;
  if (!zero_wave) {
    os << " * " << (t.key.trig == Trig::cos ? "cos(" : "sin(");
    bool first = true;
    for (int d = 0; d < n_dof; ++d) {
      int k = t.key.wave[d];
      if (k == 0) continue;
      if (!first)
        os << (k > 0 ? " + " : " - ");
      else if (k < 0)
        os << "-";
      first = false;
      int ak = k > 0 ? k : -k;
      if (ak != 1) os << ak << " ";
      os << "q";
      if (n_dof > 1) os << "_" << d + 1;
    }
    os << ")";
  }
  return os.str();
}

std::string series_pretty(const PoissonSeries& s, const std::string& indent) {
  if (s.empty()) return indent + "0\n";
  std::ostringstream os;
  for (const Term& t : s.sorted_terms())
    os << indent << term_pretty(t, s.n_dof()) << "\n";
  return os.str();
}

}  // namespace pnf
