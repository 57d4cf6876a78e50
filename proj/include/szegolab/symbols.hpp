#pragma once

// Trigonometric symbols on the unit circle and their Szegő constants.

#include <complex>
#include <map>

#include "szegolab/numkernel.hpp"
#include "szegolab/test_function.hpp"

namespace szegolab {

/// a(e^{it}) = sum_k a_k e^{ikt} with finitely many nonzero a_k.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  /// Zero coefficients are dropped; non-finite ones throw.
  explicit TrigPolynomial(const std::map<int, Complex>& coeffs);

  static TrigPolynomial constant(Complex c);
  static TrigPolynomial monomial(int k, Complex c = 1.0);
  /// Fourier coefficients of exp(p), truncated where they fall below `rel_tol * max` (never below round-off).
  static TrigPolynomial exp_of(const TrigPolynomial& p, double rel_tol = 1e-16);

  Complex coeff(int k) const;
  const std::map<int, Complex>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int min_offset() const;
  int max_offset() const;
  /// max |k| over the support
  int bandwidth() const;

  /// a_{-k} == conj(a_k) within `tol`, i.e. a is real-valued on the circle.
  bool is_real_valued(double tol = 0.0) const;

  /// ã(t) = a(1/t): coefficients k -> -k.
  TrigPolynomial reflected() const;

  Complex operator()(double t) const;

  friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator-(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator*(Complex s, const TrigPolynomial& a);
  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

 private:
  std::map<int, Complex> coeffs_;
};

inline Complex evaluate(const TrigPolynomial& a, double t) { return a(t); }

/// Fourier coefficients (log a)_k for |k| <= max_offset.
struct LogSymbolData {
  std::map<int, Complex> coeffs;
  int grid_size = 0;
  int max_offset = 0;

  Complex coeff(int k) const;
};

inline constexpr int kDefaultGrid = 4096;
/// min|a| must exceed this fraction of max|a| on the grid.
inline constexpr double kZeroProximity = 1e-8;

/// Winding number of a about 0 from phase increments on a uniform grid.
int winding_number(const TrigPolynomial& a, int grid = kDefaultGrid);

/// DFT coefficients of the continuous branch of log a sampled on `grid` points.
/// Requires grid a power of two with grid >= 4 * max_offset, and winding number 0.
LogSymbolData log_coefficients(const TrigPolynomial& a, int grid, int max_offset);

/// G[a] = exp (log a)_0
Complex geometric_mean(const TrigPolynomial& a, int grid = kDefaultGrid);

struct StrongSzegoConstant {
  Complex value;      ///< exp sum_{k=1}^{K} k (log a)_k (log a)_{-k}
  double tail_bound;  ///< estimated size of the dropped terms k > K
  int truncation;     ///< K
};

/// E[a], truncated at K = grid / 4 unless given; the tail is reported, never dropped silently.
StrongSzegoConstant strong_szego_constant(const TrigPolynomial& a, int truncation = kDefaultGrid / 4,
                                          int grid = kDefaultGrid);

/// (1/N) sum_j g(a(e^{2 pi i j / N})): trapezoid rule on the circle.
Complex symbol_average(const TrigPolynomial& a, const TestFunction& g, int grid = kDefaultGrid);

}  // namespace szegolab
