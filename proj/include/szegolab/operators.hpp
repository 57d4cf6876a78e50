#pragma once

// Operator descriptions and their finite sections.
//
// Matrix entries follow one fixed convention: entry (i, j) of a band operator is
// diagonal[i - j] evaluated at the column index j. Toeplitz operators have
// entry (i, j) = a_{i-j}.

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "szegolab/almost_periodic.hpp"
#include "szegolab/numkernel.hpp"
#include "szegolab/symbols.hpp"

namespace szegolab {

enum class Lattice { Integers, HalfLine };

/// Band operator whose diagonals are almost periodic sequences.
class BandAPOperator {
 public:
  BandAPOperator() = default;
  explicit BandAPOperator(std::map<int, APFunction> diagonals, Lattice lattice = Lattice::Integers);

  /// Constant diagonals a_d; the Laurent/Toeplitz operator of a.
  static BandAPOperator toeplitz(const TrigPolynomial& a, Lattice lattice = Lattice::Integers);
  /// Pure multiplication operator bI.
  static BandAPOperator multiplication(const APFunction& b, Lattice lattice = Lattice::Integers);

  const std::map<int, APFunction>& diagonals() const noexcept { return diagonals_; }
  Lattice lattice() const noexcept { return lattice_; }
  int bandwidth() const;

  Complex entry(long long i, long long j) const;

  /// The symbol when every diagonal is constant.
  std::optional<TrigPolynomial> toeplitz_symbol() const;

  friend BandAPOperator operator+(const BandAPOperator& a, const BandAPOperator& b);
  friend BandAPOperator operator*(Complex s, const BandAPOperator& a);
  /// A + c I
  BandAPOperator shifted(Complex c) const;

 private:
  std::map<int, APFunction> diagonals_;
  Lattice lattice_ = Lattice::Integers;
};

/// (H x)_n = x_{n+1} + x_{n-1} + lambda cos 2 pi (n alpha + theta) x_n
struct AlmostMathieuParams {
  double alpha = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
};

BandAPOperator almost_mathieu(const AlmostMathieuParams& p);

/// P_n: indices 0..n-1.  R_n: indices -n..n-1 (size 2n).
enum class SectionKind { P, R };

/// Entry (i, j) = a_{i-j}, 0 <= i, j < n.
Matrix toeplitz_section(const TrigPolynomial& a, Index n);

Matrix band_ap_section(const BandAPOperator& a, SectionKind kind, Index n);

/// J Q A Q J compressed to n x n: entry (i, j) = A(-1-i, -1-j). Requires A on Z.
Matrix flip_section(const BandAPOperator& a, Index n);

/// W_n A W_n given the section P_n A P_n: entry (i, j) = S(n-1-i, n-1-j).
Matrix reversed_section(const Matrix& section);
Matrix reversed_section(const BandAPOperator& a, Index n);

/// D(A): the offset-0 diagonal (zero function if absent).
APFunction main_diagonal(const BandAPOperator& a);

// ---------------------------------------------------------------------------
// Composite operators: sums of products of Toeplitz factors, AP multipliers and P.

struct ToeplitzFactor {
  TrigPolynomial symbol;
};
struct APMultiplier {
  APFunction values;
};
struct ProjectionP {};

using Factor = std::variant<ToeplitzFactor, APMultiplier, ProjectionP>;

struct ProductTerm {
  Complex coeff{1.0, 0.0};
  std::vector<Factor> factors;
};

class CompositeOperator {
 public:
  explicit CompositeOperator(std::vector<ProductTerm> terms);
  static CompositeOperator product(std::vector<Factor> factors);

  const std::vector<ProductTerm>& terms() const noexcept { return terms_; }
  /// max over terms of the summed factor bandwidths
  int total_bandwidth() const;

  /// s_A as the matching sum of products of factor symbols; P contributes 1.
  /// Throws MethodMismatchError when an AP multiplier is present.
  TrigPolynomial symbol() const;

 private:
  std::vector<ProductTerm> terms_;
};

int factor_bandwidth(const Factor& f);
/// n x n section of a single factor acting on l^2(Z+).
Matrix factor_section(const Factor& f, Index n);

/// n + 2 * total bandwidth + 8
Index default_truncation(const CompositeOperator& e, Index n);

struct CompositeSections {
  Matrix product_of_sections;  ///< sum of products of n x n factor sections
  Matrix section_of_product;   ///< m x m product cropped to n x n
};

/// Throws TruncationError when m < n + 2 * total bandwidth.
CompositeSections composite_sections(const CompositeOperator& e, Index n, std::optional<Index> m = std::nullopt);

using OperatorDescription = std::variant<BandAPOperator, CompositeOperator>;

/// P_n A P_n; composite operators use the exact cropped product.
Matrix finite_section(const OperatorDescription& op, Index n);

}  // namespace szegolab
