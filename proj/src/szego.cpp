#include "szegolab/szego.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace szegolab {

namespace {

void require_increasing(const std::vector<long long>& sizes, const char* op) {
  if (sizes.empty()) throw PreconditionError(std::string(op) + ": empty size range");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw PreconditionError(std::string(op) + ": sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw PreconditionError(std::string(op) + ": sizes must increase strictly");
  }
}

Vector unit_vector(Index n) {
  Vector e = Vector::Zero(n);
  e(0) = 1.0;
  return e;
}

}  // namespace

SpectrumSample eigen_sample(const Matrix& section) {
  SpectrumSample s;
  s.n = section.rows();
  s.kind = SpectrumSample::Kind::Eigen;
  if (hermitian_defect(section) <= kHermitianTolerance)
    s.values = eigvals_hermitian(section).cast<Complex>();
  else
    s.values = eigvals_general(section);
  return s;
}

SpectrumSample singular_sample(const Matrix& section) {
  SpectrumSample s;
  s.n = std::min(section.rows(), section.cols());
  s.kind = SpectrumSample::Kind::Singular;
  s.values = singular_values(section).cast<Complex>();
  return s;
}

double SzegoReport::final_residual() const {
  if (rows.empty()) throw EmptyReportError("report '" + label + "' has no rows");
  return rows.back().residual;
}

std::vector<Cluster> partial_limits(const std::vector<Complex>& values, double gap) {
  const std::size_t k = values.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (std::abs(values[i] - values[j]) < gap) parent[find(i)] = find(j);

  std::map<std::size_t, std::vector<Complex>> groups;
  for (std::size_t i = 0; i < k; ++i) groups[find(i)].push_back(values[i]);
  std::vector<Cluster> out;
  for (const auto& [root, members] : groups) {
    Cluster c;
    c.count = members.size();
    for (const auto& v : members) c.center += v;
    c.center /= static_cast<double>(members.size());
    for (const auto& v : members) c.radius = std::max(c.radius, std::abs(v - c.center));
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    return a.center.real() != b.center.real() ? a.center.real() < b.center.real() : a.center.imag() < b.center.imag();
  });
  return out;
}

SzegoReport det_ratio_sequence(const SectionProvider& sections, const std::vector<long long>& sizes,
                               std::optional<Complex> predicted) {
  require_increasing(sizes, "det_ratio_sequence");
  std::map<long long, LogDet> cache;
  auto logdet = [&](long long n) -> const LogDet& {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    LogDet d;  // det of the empty section is 1
    if (n > 0) {
      const Matrix s = sections(n);
      if (s.rows() != n || s.cols() != n)
        throw DimensionError("det_ratio_sequence: provider returned a section of the wrong size for n = " +
                             std::to_string(n));
      d = lu_logdet(s);
    }
    return cache.emplace(n, d).first->second;
  };

  SzegoReport report;
  report.label = "det_ratio";
  report.predicted = predicted;
  std::vector<Complex> ratios;
  for (const long long n : sizes) {
    const LogDet cur = logdet(n);
    const LogDet prev = logdet(n - 1);
    if (cur.singular || prev.singular) {
      report.singular_sizes.push_back(n);
      continue;
    }
    const Complex r = std::exp(cur.log_abs - prev.log_abs) * (cur.phase / prev.phase);
    ReportRow row;
    row.n = n;
    row.empirical = r;
    if (predicted) {
      row.predicted = *predicted;
      row.residual = std::abs(r - *predicted);
    } else {
      row.predicted = Complex(std::nan(""), std::nan(""));
      row.flags = "no_prediction";
    }
    report.rows.push_back(row);
    ratios.push_back(r);
  }
  if (report.rows.empty()) throw EmptyReportError("det_ratio_sequence: every section in the range is singular");
  const std::vector<Complex> tail(ratios.begin() + static_cast<long>(ratios.size() / 2), ratios.end());
  report.limit_estimates = partial_limits(tail);
  return report;
}

Complex det_ratio_via_cramer(const OperatorDescription& op, Index n) {
  if (n < 1) throw PreconditionError("det_ratio_via_cramer: n must be positive");
  const Matrix w = reversed_section(finite_section(op, n));
  return solve(w, unit_vector(n))(0);
}

Complex g_limit_constant(const BandAPOperator& a, Index m) {
  const Matrix f = flip_section(a, m);
  const Complex corner = solve(f, unit_vector(m))(0);
  if (corner == Complex{}) throw SingularityError("g_limit_constant: the 0-0 entry of the inverse vanishes", 0.0);
  return 1.0 / corner;
}

SzegoReport strong_szego_ratio(const TrigPolynomial& a, const std::vector<long long>& sizes, int truncation,
                               int grid) {
  require_increasing(sizes, "strong_szego_ratio");
  const Complex log_g = log_coefficients(a, grid, 0).coeff(0);
  const StrongSzegoConstant e = strong_szego_constant(a, truncation, grid);

  SzegoReport report;
  report.label = "strong_szego";
  report.predicted = e.value;
  for (const long long n : sizes) {
    const LogDet d = lu_logdet(toeplitz_section(a, n));
    if (d.singular) {
      report.singular_sizes.push_back(n);
      continue;
    }
    const double nn = static_cast<double>(n);
    const Complex ratio = std::exp(d.log_abs - nn * log_g.real()) * d.phase * std::polar(1.0, -nn * log_g.imag());
    report.rows.push_back({n, ratio, e.value, std::abs(ratio - e.value), ""});
  }
  if (report.rows.empty()) throw EmptyReportError("strong_szego_ratio: every section in the range is singular");
  report.notes = "E[a] truncated at K = " + std::to_string(e.truncation) +
                 ", tail bound " + std::to_string(e.tail_bound);
  return report;
}

Complex eigen_mean(const SpectrumSample& s, const TestFunction& g) {
  if (s.values.size() == 0) throw PreconditionError("eigen_mean: empty spectrum");
  Complex sum{};
  for (Index i = 0; i < s.values.size(); ++i) sum += g(s.values(i));
  return sum / static_cast<double>(s.values.size());
}

double singular_mean(const SpectrumSample& s, const TestFunction& g) {
  if (s.kind != SpectrumSample::Kind::Singular) throw PreconditionError("singular_mean: sample holds eigenvalues");
  if (s.values.size() == 0) throw PreconditionError("singular_mean: empty spectrum");
  double sum = 0.0;
  for (Index i = 0; i < s.values.size(); ++i) sum += g(s.values(i)).real();
  return sum / static_cast<double>(s.values.size());
}

Complex diagonal_mean_of_g(const Matrix& section, const TestFunction& g, Index window) {
  detail::require_square(section, "diagonal_mean_of_g");
  const Index m = section.rows();
  const Index margin = m / 4;
  const Index central = m - 2 * margin;
  if (window < 1 || central < window)
    throw PreconditionError("diagonal_mean_of_g: central window of length " + std::to_string(central) +
                            " cannot hold " + std::to_string(window) + " entries");
  const Index start = margin + (central - window) / 2;

  Vector diag(m);
  if (g.is_polynomial_in_x()) {
    using Sparse = Eigen::SparseMatrix<Complex>;
    const Sparse s = section.sparseView();
    Sparse id(m, m);
    id.setIdentity();
    const auto c = g.x_coefficients();
    Sparse acc = c.back() * id;
    for (auto k = static_cast<long>(c.size()) - 2; k >= 0; --k) {
      Sparse next = acc * s;
      acc = next + c[static_cast<std::size_t>(k)] * id;
    }
    diag = acc.diagonal();
  } else if (hermitian_defect(section) <= kHermitianTolerance) {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(section);
    if (es.info() != Eigen::Success) throw ConvergenceError("diagonal_mean_of_g: eigensolver failed", 0);
    Vector gl(m);
    for (Index k = 0; k < m; ++k) gl(k) = g(es.eigenvalues()(k));
    diag = es.eigenvectors().cwiseAbs2().cast<Complex>() * gl;
  } else {
    throw MethodMismatchError("diagonal_mean_of_g: non-polynomial g requires a Hermitian section");
  }
  return diag.segment(start, window).mean();
}

Complex limit_prediction(const OperatorDescription& op, const TestFunction& g, PredictionMethod method, Index m,
                         Index window) {
  if (method == PredictionMethod::ToeplitzSymbol) {
    std::optional<TrigPolynomial> symbol;
    if (const auto* band = std::get_if<BandAPOperator>(&op))
      symbol = band->toeplitz_symbol();
    else
      symbol = std::get<CompositeOperator>(op).symbol();
    if (!symbol) throw MethodMismatchError("limit_prediction: operator has no Toeplitz symbol");
    return symbol_average(*symbol, g);
  }
  if (m < 1) throw PreconditionError("limit_prediction: truncation must be positive");
  return diagonal_mean_of_g(finite_section(op, m), g, window);
}

double folner_discrepancy(const CompositeOperator& e, Index n, std::optional<Index> m) {
  const auto s = composite_sections(e, n, m);
  return trace_norm(s.product_of_sections - s.section_of_product) / static_cast<double>(n);
}

std::string to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::StabilityConsistent:
      return "stability-consistent";
    case StabilityVerdict::UnstableEvidence:
      return "unstable-evidence";
    case StabilityVerdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

struct Family {
  std::vector<double> sigma;
  std::vector<double> norm;
};

bool bounded_below(const Family& f) {
  for (std::size_t i = 0; i < f.sigma.size(); ++i)
    if (!(f.norm[i] > 0.0) || f.sigma[i] < kStabilityMargin * f.norm[i]) return false;
  return true;
}

bool collapses(const Family& f) {
  const std::size_t k = f.sigma.size();
  bool always_singular = k > 0;
  for (std::size_t i = 0; i < k; ++i) always_singular = always_singular && f.sigma[i] <= kCollapseLevel * f.norm[i];
  if (always_singular) return true;
  if (k < kDecayRun) return false;
  for (std::size_t i = k - kDecayRun + 1; i < k; ++i)
    if (!(f.sigma[i] < f.sigma[i - 1])) return false;
  return f.sigma.back() < kCollapseLevel * f.norm.back();
}

}  // namespace

StabilityReport stability_probe(const OperatorDescription& op, const std::vector<long long>& sizes,
                                const DistinguishedSequence* sequence) {
  const std::vector<long long>& grid = sequence ? sequence->values : sizes;
  require_increasing(grid, "stability_probe");
  const auto* band = std::get_if<BandAPOperator>(&op);
  const bool with_flip = band != nullptr && band->lattice() == Lattice::Integers;

  StabilityReport report;
  Family direct;
  Family flipped;
  for (const long long n : grid) {
    StabilityRow row;
    row.n = n;
    const RealVector sv = singular_values(finite_section(op, n));
    row.sigma_min = sv(sv.size() - 1);
    row.norm = sv(0);
    direct.sigma.push_back(row.sigma_min);
    direct.norm.push_back(row.norm);
    if (with_flip) {
      const RealVector fv = singular_values(flip_section(*band, n));
      row.flip_sigma_min = fv(fv.size() - 1);
      row.flip_norm = fv(0);
      flipped.sigma.push_back(*row.flip_sigma_min);
      flipped.norm.push_back(*row.flip_norm);
    }
    report.rows.push_back(row);
  }
  if (collapses(direct) || (with_flip && collapses(flipped)))
    report.verdict = StabilityVerdict::UnstableEvidence;
  else if (bounded_below(direct) && (!with_flip || bounded_below(flipped)))
    report.verdict = StabilityVerdict::StabilityConsistent;
  else
    report.verdict = StabilityVerdict::Inconclusive;
  return report;
}

}  // namespace szegolab
