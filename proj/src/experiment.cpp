#include "szegolab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace szegolab {

namespace {

struct KindInfo {
  ExperimentKind kind;
  const char* name;
  const char* description;
};

constexpr KindInfo kKinds[] = {
    {ExperimentKind::SzegoRatio, "szego-ratio", "det P_nAP_n / det P_{n-1}AP_{n-1} against G[a] or G[A_h]"},
    {ExperimentKind::StrongSzego, "strong-szego", "det T_n(a) / G[a]^n against E[a]"},
    {ExperimentKind::EigenDist, "eigen-dist", "(1/n) sum g(lambda_i(T_n(a))) against the circle mean of g(a)"},
    {ExperimentKind::SingularDist, "singular-dist", "(1/n) sum g(sigma_i(T_n(a))) against the circle mean of g(|a|)"},
    {ExperimentKind::MathieuDist, "mathieu-dist", "eigenvalue means of band AP sections against the diagonal of g(A)"},
    {ExperimentKind::CfExpand, "cf-expand", "continued fraction quotients and convergents of alpha"},
    {ExperimentKind::Folner, "folner", "(1/n) tr|product of sections - section of product|"},
    {ExperimentKind::Stability, "stability", "smallest singular values of P_nAP_n and of the flipped sections"},
};

const Json& require(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(key, "required field is missing");
  return j.at(key);
}

std::vector<long long> parse_sizes(const Json& j) {
  std::vector<long long> sizes;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer()) throw ConfigError("n_range[" + std::to_string(i) + "]", "expected an integer");
      sizes.push_back(j[i].get<long long>());
    }
  } else if (j.is_object()) {
    auto integer = [&](const char* key) -> std::optional<long long> {
      if (!j.contains(key)) return std::nullopt;
      if (!j.at(key).is_number_integer()) throw ConfigError(std::string("n_range.") + key, "expected an integer");
      return j.at(key).get<long long>();
    };
    const auto start = integer("start");
    const auto stop = integer("stop");
    if (!start) throw ConfigError("n_range.start", "required field is missing");
    if (!stop) throw ConfigError("n_range.stop", "required field is missing");
    const auto step = integer("step");
    const auto factor = integer("factor");
    if (step && *step < 1) throw ConfigError("n_range.step", "must be positive");
    if (factor && *factor < 2) throw ConfigError("n_range.factor", "must be at least 2");
    if (*start < 1 || *stop < *start) throw ConfigError("n_range", "need 1 <= start <= stop");
    sizes = size_grid(*start, *stop, step, factor.value_or(2));
  } else {
    throw ConfigError("n_range", "expected a list of sizes or {start, stop, step | factor}");
  }
  if (sizes.empty()) throw ConfigError("n_range", "empty size range");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ConfigError("n_range[" + std::to_string(i) + "]", "sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ConfigError("n_range", "sizes must increase strictly");
  }
  return sizes;
}

DistinguishedRequest parse_distinguished(const Json& j) {
  if (!j.is_object()) throw ConfigError("distinguished", "expected {alpha, length} or {p, q, length}");
  if (!require(j, "length").is_number_integer() || j.at("length").get<long long>() < 1)
    throw ConfigError("distinguished.length", "expected a positive integer");
  DistinguishedRequest request;
  request.length = j.at("length").get<std::size_t>();
  if (j.contains("alpha")) {
    if (!j.at("alpha").is_number()) throw ConfigError("distinguished.alpha", "expected a number");
    const double a = j.at("alpha").get<double>();
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("distinguished.alpha", "must lie in (0, 1)");
    request.base = IrrationalFrequency{a};
  } else if (j.contains("q")) {
    if (!j.at("q").is_number_integer() || j.at("q").get<long long>() < 1)
      throw ConfigError("distinguished.q", "expected a positive integer");
    const long long p = j.contains("p") && j.at("p").is_number_integer() ? j.at("p").get<long long>() : 1;
    request.base = RationalFrequency{p, j.at("q").get<long long>()};
  } else {
    throw ConfigError("distinguished", "needs \"alpha\" or \"q\"");
  }
  return request;
}

Complex nan_complex() { return {std::nan(""), std::nan("")}; }

Json complex_or_null(const std::optional<Complex>& c) { return c ? complex_to_json(*c) : Json(nullptr); }

Json clusters_to_json(const std::vector<Cluster>& cs) {
  Json out = Json::array();
  for (const auto& c : cs)
    out.push_back({{"center", complex_to_json(c.center)}, {"radius", c.radius}, {"count", c.count}});
  return out;
}

std::string residual_verdict(const SzegoReport& r, double tol) {
  if (!r.predicted) return "recorded";
  return r.final_residual() <= tol ? "pass" : "fail";
}

void fill_summary(ExperimentResult& res, const ExperimentConfig& cfg, const SzegoReport& r) {
  res.summary["predicted"] = complex_or_null(r.predicted);
  res.summary["final_residual"] = r.final_residual();
  res.summary["verdict"] = residual_verdict(r, cfg.tolerance);
}

long long max_size(const ExperimentConfig& cfg) { return cfg.sizes.back(); }

}  // namespace

std::string to_string(ExperimentKind k) {
  for (const auto& info : kKinds)
    if (info.kind == k) return info.name;
  return "unknown";
}

std::optional<ExperimentKind> experiment_kind_from_string(const std::string& s) {
  for (const auto& info : kKinds)
    if (s == info.name) return info.kind;
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> list_experiments() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& info : kKinds) out.emplace_back(info.name, info.description);
  return out;
}

std::vector<long long> size_grid(long long start, long long stop, std::optional<long long> step, long long factor) {
  std::vector<long long> out;
  if (step) {
    for (long long n = start; n <= stop; n += *step) out.push_back(n);
  } else {
    for (long long n = start; n <= stop; n *= factor) out.push_back(n);
  }
  return out;
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("$", "config must be a JSON object");
  ExperimentConfig cfg;

  const Json& kind = require(j, "experiment");
  if (!kind.is_string()) throw ConfigError("experiment", "expected a string");
  const auto parsed = experiment_kind_from_string(kind.get<std::string>());
  if (!parsed) throw ConfigError("experiment", "unknown experiment '" + kind.get<std::string>() + "'");
  cfg.kind = *parsed;

  const Json& out = require(j, "output");
  if (!out.is_string() || out.get<std::string>().empty()) throw ConfigError("output", "expected a non-empty path");
  cfg.output = out.get<std::string>();

  if (j.contains("tolerance")) {
    if (!j.at("tolerance").is_number() || !(j.at("tolerance").get<double>() > 0.0))
      throw ConfigError("tolerance", "must be a positive number");
    cfg.tolerance = j.at("tolerance").get<double>();
  }
  auto positive_index = [&](const char* key) -> std::optional<Index> {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 1)
      throw ConfigError(key, "expected a positive integer");
    return static_cast<Index>(j.at(key).get<long long>());
  };
  cfg.truncation = positive_index("truncation");
  cfg.window = positive_index("window");

  if (j.contains("symbol")) cfg.symbol = symbol_from_json(j.at("symbol"), "symbol");
  if (j.contains("operator")) cfg.op = operator_from_json(j.at("operator"), "operator");
  if (j.contains("g")) cfg.g = test_function_from_json(j.at("g"), "g");

  if (cfg.kind == ExperimentKind::CfExpand) {
    const Json& a = require(j, "alpha");
    if (a.is_number()) {
      cfg.alpha = a.get<double>();
    } else if (a.is_object() && a.contains("p") && a.contains("q") && a.at("p").is_number_integer() &&
               a.at("q").is_number_integer() && a.at("q").get<long long>() > 0) {
      cfg.alpha = static_cast<double>(a.at("p").get<long long>()) / static_cast<double>(a.at("q").get<long long>());
    } else {
      throw ConfigError("alpha", "expected a number or {p, q}");
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha", "must lie in (0, 1)");
    if (j.contains("max_terms")) {
      if (!j.at("max_terms").is_number_integer() || j.at("max_terms").get<int>() < 1)
        throw ConfigError("max_terms", "expected a positive integer");
      cfg.max_terms = j.at("max_terms").get<int>();
    }
    if (j.contains("q_cap")) {
      if (!j.at("q_cap").is_number_integer() || j.at("q_cap").get<long long>() < 1)
        throw ConfigError("q_cap", "expected a positive integer");
      cfg.q_cap = j.at("q_cap").get<std::int64_t>();
    }
    return cfg;
  }

  // Every other experiment sweeps section sizes.
  const bool has_range = j.contains("n_range");
  const bool has_seq = j.contains("distinguished");
  if (has_range && has_seq) throw ConfigError("n_range", "give either n_range or distinguished, not both");
  if (!has_range && !has_seq) throw ConfigError("n_range", "required field is missing (or give distinguished)");
  if (has_range) {
    cfg.sizes = parse_sizes(j.at("n_range"));
  } else {
    cfg.distinguished = parse_distinguished(j.at("distinguished"));
    try {
      cfg.sizes = distinguished_sequence(cfg.distinguished->base, cfg.distinguished->length).values;
    } catch (const PreconditionError& e) {
      throw ConfigError("distinguished", e.what());
    }
  }

  switch (cfg.kind) {
    case ExperimentKind::SzegoRatio:
      if (!cfg.symbol && !cfg.op) throw ConfigError("symbol", "szego-ratio needs \"symbol\" or \"operator\"");
      break;
    case ExperimentKind::StrongSzego:
      if (!cfg.symbol) throw ConfigError("symbol", "required field is missing");
      break;
    case ExperimentKind::EigenDist:
    case ExperimentKind::SingularDist:
      if (!cfg.symbol) throw ConfigError("symbol", "required field is missing");
      if (!cfg.g) throw ConfigError("g", "required field is missing");
      break;
    case ExperimentKind::MathieuDist:
      if (!cfg.op) throw ConfigError("operator", "required field is missing");
      if (!cfg.g) throw ConfigError("g", "required field is missing");
      break;
    case ExperimentKind::Folner:
      if (!cfg.op || !std::holds_alternative<CompositeOperator>(*cfg.op))
        throw ConfigError("operator", "folner needs a composite operator");
      break;
    case ExperimentKind::Stability:
      if (!cfg.op) throw ConfigError("operator", "required field is missing");
      break;
    case ExperimentKind::CfExpand:
      break;
  }
  return cfg;
}

namespace {

// `at` tracks the section size in progress so failures can name it.
ExperimentResult execute_sweep(const ExperimentConfig& cfg, long long& at) {
  ExperimentResult res;
  res.summary["experiment"] = to_string(cfg.kind);
  res.summary["tolerance"] = cfg.tolerance;

  switch (cfg.kind) {
    case ExperimentKind::SzegoRatio: {
      SectionProvider provider;
      std::optional<Complex> predicted;
      if (cfg.symbol) {
        const TrigPolynomial a = *cfg.symbol;
        provider = [a, &at](Index n) {
          at = n;
          return toeplitz_section(a, n);
        };
        predicted = geometric_mean(a);
      } else {
        const OperatorDescription op = *cfg.op;
        provider = [op, &at](Index n) {
          at = n;
          return finite_section(op, n);
        };
        if (const auto* band = std::get_if<BandAPOperator>(&op)) {
          if (auto s = band->toeplitz_symbol())
            predicted = geometric_mean(*s);
          else if (band->lattice() == Lattice::Integers)
            predicted = g_limit_constant(*band, cfg.truncation.value_or(std::max<Index>(64, 4 * max_size(cfg))));
        } else {
          const auto& comp = std::get<CompositeOperator>(op);
          const bool toeplitz_only = std::all_of(comp.terms().begin(), comp.terms().end(), [](const ProductTerm& t) {
            return std::none_of(t.factors.begin(), t.factors.end(),
                                [](const Factor& f) { return std::holds_alternative<APMultiplier>(f); });
          });
          if (toeplitz_only) predicted = geometric_mean(comp.symbol());
        }
      }
      auto report = det_ratio_sequence(provider, cfg.sizes, predicted);
      fill_summary(res, cfg, report);
      res.summary["limit_estimates"] = clusters_to_json(report.limit_estimates);
      res.summary["singular_sizes"] = report.singular_sizes;
      res.reports.push_back(std::move(report));
      break;
    }
    case ExperimentKind::StrongSzego: {
      auto report = strong_szego_ratio(*cfg.symbol, cfg.sizes);
      fill_summary(res, cfg, report);
      res.summary["notes"] = report.notes;
      res.reports.push_back(std::move(report));
      break;
    }
    case ExperimentKind::EigenDist:
    case ExperimentKind::SingularDist: {
      const bool singular = cfg.kind == ExperimentKind::SingularDist;
      const Complex predicted =
          singular ? symbol_average(*cfg.symbol, cfg.g->composed_with_abs()) : symbol_average(*cfg.symbol, *cfg.g);
      SzegoReport report;
      report.label = singular ? "singular_mean" : "eigen_mean";
      report.predicted = predicted;
      for (const long long n : cfg.sizes) {
        at = n;
        const Matrix t = toeplitz_section(*cfg.symbol, n);
        const Complex emp = singular ? Complex(singular_mean(singular_sample(t), *cfg.g), 0.0)
                                     : eigen_mean(eigen_sample(t), *cfg.g);
        report.rows.push_back({n, emp, predicted, std::abs(emp - predicted), ""});
      }
      fill_summary(res, cfg, report);
      res.reports.push_back(std::move(report));
      break;
    }
    case ExperimentKind::MathieuDist: {
      const Index m = cfg.truncation.value_or(4 * max_size(cfg));
      const Index window = cfg.window.value_or(max_size(cfg));
      const Complex predicted = limit_prediction(*cfg.op, *cfg.g, PredictionMethod::DiagonalOfG, m, window);
      SzegoReport report;
      report.label = "mathieu_dist";
      report.predicted = predicted;
      for (const long long n : cfg.sizes) {
        at = n;
        const Complex emp = eigen_mean(eigen_sample(finite_section(*cfg.op, n)), *cfg.g);
        report.rows.push_back({n, emp, predicted, std::abs(emp - predicted), ""});
      }
      fill_summary(res, cfg, report);
      res.summary["truncation"] = m;
      res.summary["window"] = window;
      res.reports.push_back(std::move(report));
      break;
    }
    case ExperimentKind::CfExpand: {
      const auto cf = expand_cf(cfg.alpha, cfg.max_terms, cfg.q_cap);
      bool bounds = true;
      for (std::size_t i = 1; i < cf.convergents.size(); ++i) bounds = bounds && cf.interior_bound_holds(i);
      res.summary["alpha"] = cfg.alpha;
      res.summary["termination"] = to_string(cf.termination);
      res.summary["quotients"] = cf.quotients;
      res.summary["predicted"] = nullptr;
      res.summary["final_residual"] = nullptr;
      res.summary["interior_bounds_hold"] = bounds;
      res.summary["verdict"] = bounds ? "pass" : "fail";
      res.cf = cf;
      break;
    }
    case ExperimentKind::Folner: {
      const auto& comp = std::get<CompositeOperator>(*cfg.op);
      SzegoReport report;
      report.label = "folner";
      report.predicted = Complex{};
      for (const long long n : cfg.sizes) {
        at = n;
        std::optional<Index> m;
        if (cfg.truncation) m = std::max<Index>(*cfg.truncation, default_truncation(comp, n));
        const double d = folner_discrepancy(comp, n, m);
        report.rows.push_back({n, Complex(d, 0.0), Complex{}, d, ""});
      }
      fill_summary(res, cfg, report);
      res.reports.push_back(std::move(report));
      break;
    }
    case ExperimentKind::Stability: {
      const auto probe = stability_probe(*cfg.op, cfg.sizes);
      SzegoReport report;
      report.label = "stability";
      for (const auto& row : probe.rows) {
        const Complex flip = row.flip_sigma_min ? Complex(*row.flip_sigma_min, 0.0) : nan_complex();
        const double rel = row.norm > 0.0 ? row.sigma_min / row.norm : 0.0;
        report.rows.push_back({row.n, Complex(row.sigma_min, 0.0), flip, rel, "sigma_min;flip_sigma_min"});
      }
      res.summary["predicted"] = nullptr;
      res.summary["final_residual"] = report.rows.back().residual;
      res.summary["verdict"] = to_string(probe.verdict);
      res.reports.push_back(std::move(report));
      break;
    }
  }
  return res;
}

}  // namespace

ExperimentResult execute(const ExperimentConfig& cfg) {
  long long at = 0;
  try {
    return execute_sweep(cfg, at);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    if (at == 0) throw;
    throw Error("at n = " + std::to_string(at) + ": " + e.what());
  }
}

void emit_report(const std::vector<SzegoReport>& reports, const std::filesystem::path& path) {
  if (reports.empty()) throw PreconditionError("emit_report: no reports to write");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_report_csv(os, reports);
  os.flush();
  if (!os) throw Error("write to '" + path.string() + "' failed");
}

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& base, const char* ext) {
  return std::filesystem::path(base.string() + ext);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  os << text;
  os.flush();
  if (!os) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentResult res;
  try {
    res = execute(cfg);
  } catch (const Error& e) {
    log << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  try {
    if (cfg.output.has_parent_path()) std::filesystem::create_directories(cfg.output.parent_path());
    const auto csv = with_suffix(cfg.output, ".csv");
    if (res.cf) {
      std::ofstream os(csv, std::ios::binary | std::ios::trunc);
      if (!os) throw Error("cannot open '" + csv.string() + "' for writing");
      write_cf_csv(os, *res.cf);
    } else {
      emit_report(res.reports, csv);
    }
    write_text(with_suffix(cfg.output, ".json"), res.summary.dump(2) + "\n");
  } catch (const std::exception& e) {
    log << "I/O failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  const std::string verdict = res.summary.value("verdict", "");
  log << to_string(cfg.kind) << ": " << verdict << '\n';
  return verdict == "fail" ? kExitNumeric : kExitOk;
}

namespace {

std::optional<ExperimentConfig> load(const std::filesystem::path& path, std::ostream& log) {
  std::ifstream in(path);
  if (!in) {
    log << "config failure: cannot open '" << path.string() << "'\n";
    return std::nullopt;
  }
  try {
    const Json j = Json::parse(in);
    return parse_config(j);
  } catch (const Json::parse_error& e) {
    log << "config failure: invalid JSON: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    log << "config failure: " << e.what() << '\n';
  } catch (const Error& e) {
    log << "config failure: " << e.what() << '\n';
  }
  return std::nullopt;
}

}  // namespace

int run_config_file(const std::filesystem::path& path, std::ostream& log) {
  const auto cfg = load(path, log);
  if (!cfg) return kExitConfig;
  return run_experiment(*cfg, log);
}

int validate_config_file(const std::filesystem::path& path, std::ostream& log) {
  const auto cfg = load(path, log);
  if (!cfg) return kExitConfig;
  log << "ok: " << to_string(cfg->kind) << '\n';
  return kExitOk;
}

}  // namespace szegolab
