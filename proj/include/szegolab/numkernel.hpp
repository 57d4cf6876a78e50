#pragma once

// Dense linear algebra substrate: log-scaled determinants, solves, spectra.
//
// Every routine accepts any Eigen dense expression and works for real or
// complex scalars. Results are returned in double / std::complex<double>.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>

#include "szegolab/errors.hpp"

namespace szegolab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Determinant in log form: det = exp(log_abs) * phase unless singular.
struct LogDet {
  double log_abs = 0.0;
  Complex phase{1.0, 0.0};
  bool singular = false;

  Complex value() const { return singular ? Complex{0.0, 0.0} : std::exp(log_abs) * phase; }
};

inline LogDet operator*(const LogDet& a, const LogDet& b) {
  if (a.singular || b.singular) return LogDet{-std::numeric_limits<double>::infinity(), {0.0, 0.0}, true};
  return LogDet{a.log_abs + b.log_abs, a.phase * b.phase, false};
}

namespace detail {

inline std::string shape_of(Index r, Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* op) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(op) + ": expected square matrix, got " + shape_of(m.rows(), m.cols()));
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* op) {
  if (!m.allFinite()) throw PreconditionError(std::string(op) + ": matrix has non-finite entries");
}

template <typename Scalar>
Complex to_complex(const Scalar& s) {
  return Complex(s);
}

// Pivots at or below n * eps * max|m_ij| are treated as exact zeros.
template <typename Derived>
double pivot_threshold(const Eigen::MatrixBase<Derived>& m) {
  const double scale = m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
  return static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace detail

/// log|det m| and the phase of det m from a partially pivoted LU.
template <typename Derived>
LogDet lu_logdet(const Eigen::MatrixBase<Derived>& m) {
  detail::require_square(m, "lu_logdet");
  detail::require_finite(m, "lu_logdet");
  using Plain = typename Derived::PlainObject;
  LogDet out;
  if (m.rows() == 0) return out;

  const Eigen::PartialPivLU<Plain> lu(m.eval());
  const double threshold = detail::pivot_threshold(m);
  const auto& packed = lu.matrixLU();
  Complex phase = static_cast<double>(lu.permutationP().determinant());
  double log_abs = 0.0;
  for (Index i = 0; i < packed.rows(); ++i) {
    const Complex pivot = detail::to_complex(packed(i, i));
    const double mag = std::abs(pivot);
    if (!(mag > threshold)) {
      out.singular = true;
      out.log_abs = -std::numeric_limits<double>::infinity();
      out.phase = 0.0;
      return out;
    }
    log_abs += std::log(mag);
    phase *= pivot / mag;
  }
  out.log_abs = log_abs;
  out.phase = phase / std::abs(phase);
  return out;
}

/// Solves m x = rhs with the same pivoted factorization as lu_logdet.
template <typename Derived, typename RhsDerived>
Vector solve(const Eigen::MatrixBase<Derived>& m, const Eigen::MatrixBase<RhsDerived>& rhs) {
  detail::require_square(m, "solve");
  detail::require_finite(m, "solve");
  if (rhs.rows() != m.rows() || rhs.cols() != 1)
    throw DimensionError("solve: rhs has shape " + detail::shape_of(rhs.rows(), rhs.cols()) +
                         ", matrix has " + detail::shape_of(m.rows(), m.cols()));
  const Matrix a = m.template cast<Complex>();
  const Eigen::PartialPivLU<Matrix> lu(a);
  const double threshold = detail::pivot_threshold(a);
  const double smallest = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(smallest > threshold))
    throw SingularityError("solve: matrix is numerically singular", smallest);
  return lu.solve(rhs.template cast<Complex>());
}

/// Largest entrywise deviation |m - m^*|.
template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return static_cast<double>((m - m.adjoint()).cwiseAbs().maxCoeff());
}

inline constexpr double kHermitianTolerance = 1e-12;

/// Real eigenvalues of a Hermitian matrix, ascending.
template <typename Derived>
RealVector eigvals_hermitian(const Eigen::MatrixBase<Derived>& m) {
  detail::require_square(m, "eigvals_hermitian");
  detail::require_finite(m, "eigvals_hermitian");
  const double defect = hermitian_defect(m);
  if (defect > kHermitianTolerance) {
    std::ostringstream os;
    os << "eigvals_hermitian: matrix is not Hermitian (max |m - m*| = " << defect << ")";
    throw SymmetryError(os.str(), defect);
  }
  if (m.rows() == 0) return RealVector();
  using Plain = typename Derived::PlainObject;
  const Eigen::SelfAdjointEigenSolver<Plain> es(m.eval(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("eigvals_hermitian: tridiagonal QR did not converge", 30 * m.rows());
  return es.eigenvalues().template cast<double>();
}

/// Maximum Schur sweeps allowed per matrix row.
inline constexpr long kSweepsPerRow = 60;

/// Eigenvalues of a general square matrix (Hessenberg reduction + shifted QR).
template <typename Derived>
Vector eigvals_general(const Eigen::MatrixBase<Derived>& m) {
  detail::require_square(m, "eigvals_general");
  detail::require_finite(m, "eigvals_general");
  if (m.rows() == 0) return Vector();
  const Matrix a = m.template cast<Complex>();
  const long max_iter = kSweepsPerRow * static_cast<long>(a.rows());
  Eigen::ComplexEigenSolver<Matrix> es;
  es.setMaxIterations(max_iter);
  es.compute(a, false);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("eigvals_general: shifted QR did not converge within " + std::to_string(max_iter) +
                               " iterations",
                           max_iter);
  return es.eigenvalues();
}

/// Singular values, descending, length min(rows, cols).
template <typename Derived>
RealVector singular_values(const Eigen::MatrixBase<Derived>& m) {
  detail::require_finite(m, "singular_values");
  if (m.size() == 0) return RealVector();
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(m.eval());
  if (svd.info() != Eigen::Success)
    throw ConvergenceError("singular_values: SVD did not converge", 0);
  return svd.singularValues().template cast<double>();
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  return singular_values(m).sum();
}

}  // namespace szegolab
