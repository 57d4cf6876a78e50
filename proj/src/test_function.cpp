#include "szegolab/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "szegolab/errors.hpp"

namespace szegolab {

FunctionDomain FunctionDomain::interval(double lo, double hi, bool lo_open, bool hi_open) {
  FunctionDomain d;
  d.kind = Kind::RealInterval;
  d.lo = lo;
  d.hi = hi;
  d.lo_open = lo_open;
  d.hi_open = hi_open;
  return d;
}

FunctionDomain FunctionDomain::disk(std::complex<double> center, double radius) {
  FunctionDomain d;
  d.kind = Kind::Disk;
  d.center = center;
  d.radius = radius;
  return d;
}

bool FunctionDomain::contains(std::complex<double> x, double imag_tol) const {
  switch (kind) {
    case Kind::Everywhere:
      return std::isfinite(x.real()) && std::isfinite(x.imag());
    case Kind::RealInterval: {
      if (std::abs(x.imag()) > imag_tol) return false;
      const double r = x.real();
      const bool above = lo_open ? r > lo : r >= lo;
      const bool below = hi_open ? r < hi : r <= hi;
      return above && below;
    }
    case Kind::Disk:
      return std::abs(x - center) <= radius;
  }
  return false;
}

TestFunction TestFunction::polynomial(std::vector<std::complex<double>> coeffs) {
  std::vector<Monomial> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != std::complex<double>{}) terms.push_back({static_cast<int>(k), 0, coeffs[k]});
  auto g = polynomial_xbar(std::move(terms));
  std::ostringstream os;
  os << "poly(deg " << (coeffs.empty() ? 0 : coeffs.size() - 1) << ")";
  g.name_ = os.str();
  return g;
}

TestFunction TestFunction::polynomial_xbar(std::vector<Monomial> terms) {
  TestFunction g;
  g.kind_ = Kind::Polynomial;
  g.name_ = "poly";
  for (const auto& t : terms)
    if (t.x_power < 0 || t.conj_power < 0) throw PreconditionError("polynomial: negative power");
  g.terms_ = std::move(terms);
  return g;
}

TestFunction TestFunction::power(int p) {
  if (p < 0) throw PreconditionError("power: exponent must be non-negative");
  std::vector<std::complex<double>> c(static_cast<std::size_t>(p) + 1, 0.0);
  c.back() = 1.0;
  auto g = polynomial(std::move(c));
  g.name_ = "x^" + std::to_string(p);
  return g;
}

TestFunction TestFunction::exp_series(double radius) {
  if (!(radius > 0.0)) throw PreconditionError("exp_series: radius must be positive");
  TestFunction g;
  g.kind_ = Kind::EntireSeries;
  g.name_ = "exp";
  g.domain_ = FunctionDomain::disk(0.0, radius);
  // Truncate once r^k/k! is negligible against e^r and the terms are decreasing.
  const double target = 1e-17 * std::exp(radius);
  double coeff = 1.0;
  double magnitude = 1.0;
  for (int k = 0; k < 1000; ++k) {
    g.series_.push_back(coeff);
    if (k > radius && magnitude < target) break;
    coeff /= (k + 1);
    magnitude *= radius / (k + 1);
  }
  return g;
}

TestFunction TestFunction::continuous(std::string name, std::function<std::complex<double>(std::complex<double>)> fn,
                                      FunctionDomain domain) {
  TestFunction g;
  g.kind_ = Kind::Continuous;
  g.name_ = std::move(name);
  g.fn_ = std::move(fn);
  g.domain_ = domain;
  return g;
}

TestFunction TestFunction::log() {
  return continuous(
      "log", [](std::complex<double> x) { return std::complex<double>(std::log(x.real()), 0.0); },
      FunctionDomain::interval(0.0, HUGE_VAL, true, false));
}

TestFunction TestFunction::abs() {
  return continuous("abs", [](std::complex<double> x) { return std::complex<double>(std::abs(x), 0.0); },
                    FunctionDomain::everywhere());
}

std::complex<double> TestFunction::operator()(std::complex<double> x) const {
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os << "test function '" << name_ << "' evaluated outside its domain at " << x;
    throw DomainError(os.str(), x);
  }
  switch (kind_) {
    case Kind::Polynomial: {
      std::complex<double> sum{};
      const std::complex<double> xc = std::conj(x);
      for (const auto& t : terms_) {
        std::complex<double> v = t.coeff;
        for (int p = 0; p < t.x_power; ++p) v *= x;
        for (int q = 0; q < t.conj_power; ++q) v *= xc;
        sum += v;
      }
      return sum;
    }
    case Kind::EntireSeries: {
      std::complex<double> acc{};
      for (auto it = series_.rbegin(); it != series_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    case Kind::Continuous:
      return fn_(x);
  }
  return {};
}

bool TestFunction::is_polynomial_in_x() const {
  if (kind_ != Kind::Polynomial) return false;
  for (const auto& t : terms_)
    if (t.conj_power != 0) return false;
  return true;
}

std::vector<std::complex<double>> TestFunction::x_coefficients() const {
  int degree = 0;
  for (const auto& t : terms_) degree = std::max(degree, t.x_power);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(degree) + 1, 0.0);
  for (const auto& t : terms_) c[static_cast<std::size_t>(t.x_power)] += t.coeff;
  return c;
}

TestFunction TestFunction::composed_with_abs() const {
  auto self = *this;
  auto fn = [self](std::complex<double> x) { return self(std::complex<double>(std::abs(x), 0.0)); };
  return continuous(name_ + "(|x|)", fn, FunctionDomain::everywhere());
}

}  // namespace szegolab
