#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace szegolab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A factorization met a pivot too small to divide by.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double smallest_pivot)
      : Error(what), smallest_pivot_(smallest_pivot) {}
  double smallest_pivot() const noexcept { return smallest_pivot_; }

 private:
  double smallest_pivot_;
};

class SymmetryError : public Error {
 public:
  SymmetryError(const std::string& what, double defect) : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, long iterations)
      : Error(what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

/// The symbol comes too close to zero on the sampling grid.
class ZeroProximityError : public Error {
 public:
  ZeroProximityError(const std::string& what, double min_abs, double max_abs)
      : Error(what), min_abs_(min_abs), max_abs_(max_abs) {}
  double min_abs() const noexcept { return min_abs_; }
  double max_abs() const noexcept { return max_abs_; }

 private:
  double min_abs_;
  double max_abs_;
};

/// No continuous logarithm exists (nonzero winding number).
class BranchError : public Error {
 public:
  BranchError(const std::string& what, int winding) : Error(what), winding_(winding) {}
  int winding() const noexcept { return winding_; }

 private:
  int winding_;
};

/// A test function was applied outside its declared domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::complex<double> sample)
      : Error(what), sample_(sample) {}
  std::complex<double> sample() const noexcept { return sample_; }

 private:
  std::complex<double> sample_;
};

/// The big truncation used for operator products is too small.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked to use a method that does not apply to its input.
class MethodMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyReportError : public Error {
 public:
  using Error::Error;
};

/// Config validation failure; `path()` names the offending field, e.g. "g.kind".
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace szegolab
