#pragma once

// Empirical checks of Szegő-type limit theorems on finite sections.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "szegolab/almost_periodic.hpp"
#include "szegolab/numkernel.hpp"
#include "szegolab/operators.hpp"
#include "szegolab/symbols.hpp"
#include "szegolab/test_function.hpp"

namespace szegolab {

struct SpectrumSample {
  enum class Kind { Eigen, Singular };
  Index n = 0;
  Vector values;  ///< eigenvalues (any order) or singular values (descending)
  Kind kind = Kind::Eigen;
};

/// Eigenvalues of a section; Hermitian sections take the Hermitian path.
SpectrumSample eigen_sample(const Matrix& section);
SpectrumSample singular_sample(const Matrix& section);

struct ReportRow {
  long long n = 0;
  Complex empirical;
  Complex predicted;
  double residual = 0.0;
  std::string flags;
};

/// One accumulation value of a ratio sequence.
struct Cluster {
  Complex center;
  double radius = 0.0;
  std::size_t count = 0;
};

struct SzegoReport {
  std::string label;
  std::vector<ReportRow> rows;          ///< strictly increasing n
  std::optional<Complex> predicted;
  std::vector<long long> singular_sizes;  ///< sizes whose sections were singular (rows omitted)
  std::vector<Cluster> limit_estimates;   ///< clustered tail values, when computed
  std::string notes;

  double final_residual() const;
};

using SectionProvider = std::function<Matrix(Index)>;

/// Single-linkage clusters: values closer than `gap` share a cluster.
std::vector<Cluster> partial_limits(const std::vector<Complex>& values, double gap = 1e-6);

/// r_n = det S_n / det S_{n-1} via log determinants. Singular sections are recorded and skipped.
/// The tail half of the ratios is clustered into `limit_estimates`.
SzegoReport det_ratio_sequence(const SectionProvider& sections, const std::vector<long long>& sizes,
                               std::optional<Complex> predicted = std::nullopt);

/// beta_n = first component of the solution of W_n A W_n x = e_0, i.e. det S_{n-1} / det S_n.
Complex det_ratio_via_cramer(const OperatorDescription& op, Index n);

/// 1 / (solve(flip_section(A, m), e_0))_0
Complex g_limit_constant(const BandAPOperator& a, Index m);

/// d_n = det T_n(a) / G[a]^n against E[a].
SzegoReport strong_szego_ratio(const TrigPolynomial& a, const std::vector<long long>& sizes,
                               int truncation = kDefaultGrid / 4, int grid = kDefaultGrid);

/// (1/n) sum g(lambda_i)
Complex eigen_mean(const SpectrumSample& s, const TestFunction& g);
/// (1/n) sum g(sigma_i), real part
double singular_mean(const SpectrumSample& s, const TestFunction& g);

enum class PredictionMethod { ToeplitzSymbol, DiagonalOfG };

/// Mean of the main diagonal of g(S) over `window` entries centered inside [m/4, m - m/4).
/// Polynomial g uses a sparse matrix polynomial; other g need Hermitian S (spectral calculus).
Complex diagonal_mean_of_g(const Matrix& section, const TestFunction& g, Index window);

/// Predicted limit of eigen_mean. ToeplitzSymbol: symbol_average(s_A, g). DiagonalOfG: windowed
/// diagonal mean of g(P_m A P_m).
Complex limit_prediction(const OperatorDescription& op, const TestFunction& g, PredictionMethod method, Index m,
                         Index window);

/// (1/n) tr |product_of_sections - section_of_product|
double folner_discrepancy(const CompositeOperator& e, Index n, std::optional<Index> m = std::nullopt);

enum class StabilityVerdict { StabilityConsistent, UnstableEvidence, Inconclusive };
std::string to_string(StabilityVerdict v);

struct StabilityRow {
  long long n = 0;
  double sigma_min = 0.0;  ///< smallest singular value of P_n A P_n
  double norm = 0.0;       ///< largest singular value of P_n A P_n
  std::optional<double> flip_sigma_min;
  std::optional<double> flip_norm;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  StabilityVerdict verdict = StabilityVerdict::Inconclusive;
};

/// Relative lower bound for "bounded below".
inline constexpr double kStabilityMargin = 1e-6;
/// Relative level below which a decaying family counts as collapsed.
inline constexpr double kCollapseLevel = 1e-8;
inline constexpr std::size_t kDecayRun = 5;

/// Observational probe of finite-section stability; sizes come from `sequence` when given.
StabilityReport stability_probe(const OperatorDescription& op, const std::vector<long long>& sizes,
                                const DistinguishedSequence* sequence = nullptr);

}  // namespace szegolab
