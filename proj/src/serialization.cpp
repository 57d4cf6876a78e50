#include "szegolab/serialization.hpp"

#include <cstdio>
#include <ostream>

namespace szegolab {

namespace {

double number_at(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "required field is missing");
  if (!j.at(key).is_number()) throw ConfigError(path + "." + key, "expected a number");
  return j.at(key).get<double>();
}

double number_or(const Json& j, const std::string& key, double fallback, const std::string& path) {
  return j.contains(key) ? number_at(j, key, path) : fallback;
}

int offset_from_key(const std::string& key, const std::string& path) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw ConfigError(path + "." + key, "offset keys must be integers");
  }
  if (used != key.size()) throw ConfigError(path + "." + key, "offset keys must be integers");
  return k;
}

BandAPOperator apply_scale_shift(BandAPOperator a, const Json& j, const std::string& path) {
  if (j.contains("scale")) a = complex_from_json(j.at("scale"), path + ".scale") * a;
  if (j.contains("shift")) a = a.shifted(complex_from_json(j.at("shift"), path + ".shift"));
  return a;
}

Factor factor_from_json(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "P") return ProjectionP{};
  if (j.is_object() && j.size() == 1) {
    if (j.contains("toeplitz")) return ToeplitzFactor{symbol_from_json(j.at("toeplitz"), path + ".toeplitz")};
    if (j.contains("multiplier")) return APMultiplier{ap_from_json(j.at("multiplier"), path + ".multiplier")};
  }
  throw ConfigError(path, "factor must be \"P\", {\"toeplitz\": ...} or {\"multiplier\": ...}");
}

Json factor_to_json(const Factor& f) {
  if (const auto* t = std::get_if<ToeplitzFactor>(&f)) return Json{{"toeplitz", symbol_to_json(t->symbol)}};
  if (const auto* m = std::get_if<APMultiplier>(&f)) return Json{{"multiplier", ap_to_json(m->values)}};
  return "P";
}

std::string clean_flags(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

}  // namespace

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(path, "expected a number or [re, im]");
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

TrigPolynomial symbol_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "symbol must be an object {offset: [re, im]}");
  if (j.contains("exp_of")) {
    if (j.size() != 1) throw ConfigError(path, "\"exp_of\" cannot be mixed with offsets");
    return TrigPolynomial::exp_of(symbol_from_json(j.at("exp_of"), path + ".exp_of"));
  }
  std::map<int, Complex> coeffs;
  for (const auto& [key, value] : j.items())
    coeffs[offset_from_key(key, path)] += complex_from_json(value, path + "." + key);
  try {
    return TrigPolynomial(coeffs);
  } catch (const PreconditionError& e) {
    throw ConfigError(path, e.what());
  }
}

Json symbol_to_json(const TrigPolynomial& a) {
  Json j = Json::object();
  for (const auto& [k, c] : a.coeffs()) j[std::to_string(k)] = complex_to_json(c);
  return j;
}

APFunction ap_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "AP function must be a list of {freq, re, im}");
  std::vector<APFunction::Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_object()) throw ConfigError(p, "expected {freq, re, im}");
    terms.push_back({number_at(j[i], "freq", p), {number_or(j[i], "re", 0.0, p), number_or(j[i], "im", 0.0, p)}});
  }
  try {
    return APFunction(terms);
  } catch (const PreconditionError& e) {
    throw ConfigError(path, e.what());
  }
}

Json ap_to_json(const APFunction& a) {
  Json j = Json::array();
  for (const auto& t : a.terms()) j.push_back({{"freq", t.freq}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  return j;
}

OperatorDescription operator_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "operator must be an object with a \"kind\" tag");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError(path + ".kind", "required string tag");
  const std::string kind = j.at("kind").get<std::string>();

  auto lattice_of = [&]() {
    if (!j.contains("lattice")) return Lattice::Integers;
    const Json& l = j.at("lattice");
    if (l == "Z") return Lattice::Integers;
    if (l == "Z+") return Lattice::HalfLine;
    throw ConfigError(path + ".lattice", "expected \"Z\" or \"Z+\"");
  };

  if (kind == "toeplitz") {
    if (!j.contains("symbol")) throw ConfigError(path + ".symbol", "required field is missing");
    return apply_scale_shift(BandAPOperator::toeplitz(symbol_from_json(j.at("symbol"), path + ".symbol"), lattice_of()),
                             j, path);
  }
  if (kind == "band_ap") {
    if (!j.contains("diagonals") || !j.at("diagonals").is_object())
      throw ConfigError(path + ".diagonals", "required object {offset: AP function}");
    std::map<int, APFunction> diags;
    for (const auto& [key, value] : j.at("diagonals").items())
      diags.emplace(offset_from_key(key, path + ".diagonals"), ap_from_json(value, path + ".diagonals." + key));
    return apply_scale_shift(BandAPOperator(std::move(diags), lattice_of()), j, path);
  }
  if (kind == "almost_mathieu") {
    const AlmostMathieuParams p{number_at(j, "alpha", path), number_at(j, "lambda", path),
                                number_or(j, "theta", 0.0, path)};
    return apply_scale_shift(almost_mathieu(p), j, path);
  }
  if (kind == "composite") {
    if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty())
      throw ConfigError(path + ".terms", "required non-empty list");
    std::vector<ProductTerm> terms;
    const Json& ts = j.at("terms");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string p = path + ".terms[" + std::to_string(i) + "]";
      if (!ts[i].is_object() || !ts[i].contains("factors") || !ts[i].at("factors").is_array() ||
          ts[i].at("factors").empty())
        throw ConfigError(p + ".factors", "required non-empty list");
      ProductTerm term;
      if (ts[i].contains("coeff")) term.coeff = complex_from_json(ts[i].at("coeff"), p + ".coeff");
      const Json& fs = ts[i].at("factors");
      for (std::size_t k = 0; k < fs.size(); ++k)
        term.factors.push_back(factor_from_json(fs[k], p + ".factors[" + std::to_string(k) + "]"));
      terms.push_back(std::move(term));
    }
    return CompositeOperator(std::move(terms));
  }
  throw ConfigError(path + ".kind", "unknown operator kind '" + kind + "'");
}

Json operator_to_json(const OperatorDescription& op) {
  if (const auto* band = std::get_if<BandAPOperator>(&op)) {
    Json diags = Json::object();
    for (const auto& [d, f] : band->diagonals()) diags[std::to_string(d)] = ap_to_json(f);
    return {{"kind", "band_ap"},
            {"lattice", band->lattice() == Lattice::Integers ? "Z" : "Z+"},
            {"diagonals", diags}};
  }
  Json terms = Json::array();
  for (const auto& t : std::get<CompositeOperator>(op).terms()) {
    Json factors = Json::array();
    for (const auto& f : t.factors) factors.push_back(factor_to_json(f));
    terms.push_back({{"coeff", complex_to_json(t.coeff)}, {"factors", factors}});
  }
  return {{"kind", "composite"}, {"terms", terms}};
}

TestFunction test_function_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError(path + ".kind", "test function needs a string \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return TestFunction::identity();
  if (kind == "power") {
    if (!j.contains("p") || !j.at("p").is_number_integer() || j.at("p").get<int>() < 0)
      throw ConfigError(path + ".p", "expected a non-negative integer");
    return TestFunction::power(j.at("p").get<int>());
  }
  if (kind == "polynomial") {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty())
      throw ConfigError(path + ".coeffs", "expected a non-empty list of coefficients");
    std::vector<Complex> c;
    for (std::size_t i = 0; i < j.at("coeffs").size(); ++i)
      c.push_back(complex_from_json(j.at("coeffs")[i], path + ".coeffs[" + std::to_string(i) + "]"));
    return TestFunction::polynomial(c);
  }
  if (kind == "exp") {
    const double r = number_or(j, "radius", 16.0, path);
    if (!(r > 0.0)) throw ConfigError(path + ".radius", "must be positive");
    return TestFunction::exp_series(r);
  }
  if (kind == "log") return TestFunction::log();
  if (kind == "abs") return TestFunction::abs();
  throw ConfigError(path + ".kind", "unknown test function kind '" + kind + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_report_csv(std::ostream& os, const std::vector<SzegoReport>& reports) {
  if (reports.empty()) throw PreconditionError("write_report_csv: no reports to write");
  os << kReportHeader << '\n';
  for (const auto& r : reports)
    for (const auto& row : r.rows)
      os << row.n << ',' << format_double(row.empirical.real()) << ',' << format_double(row.empirical.imag()) << ','
         << format_double(row.predicted.real()) << ',' << format_double(row.predicted.imag()) << ','
         << format_double(row.residual) << ',' << clean_flags(row.flags) << '\n';
}

void write_cf_csv(std::ostream& os, const ContinuedFraction& cf) {
  os << "n,b_n,p_n,q_n,error_bound\n";
  const std::size_t m = cf.convergents.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cf.convergents[i];
    double bound = 0.0;
    const double q = static_cast<double>(c.q);
    if (i + 1 < m)
      bound = 1.0 / (q * static_cast<double>(cf.convergents[i + 1].q));
    else if (cf.termination != ContinuedFraction::Termination::Rational)
      bound = 1.0 / (q * q);
    os << (i + 1) << ',' << cf.quotients[i] << ',' << c.p << ',' << c.q << ',' << format_double(bound) << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
    }
    os << '\n';
  }
}

}  // namespace szegolab
