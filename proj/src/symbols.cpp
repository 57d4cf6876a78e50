#include "szegolab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace szegolab {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// w[r] = exp(2 pi i r / n)
std::vector<Complex> roots_of_unity(int n) {
  std::vector<Complex> w(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) w[static_cast<std::size_t>(r)] = std::polar(1.0, 2.0 * std::numbers::pi * r / n);
  return w;
}

long long mod(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

// a(e^{2 pi i j / n}) for j = 0..n-1. Real-valued symbols get exactly real samples.
std::vector<Complex> sample(const TrigPolynomial& a, int n, const std::vector<Complex>& w) {
  std::vector<Complex> out(static_cast<std::size_t>(n), Complex{});
  for (int j = 0; j < n; ++j) {
    Complex s{};
    for (const auto& [k, c] : a.coeffs()) s += c * w[static_cast<std::size_t>(mod(static_cast<long long>(k) * j, n))];
    out[static_cast<std::size_t>(j)] = s;
  }
  if (a.is_real_valued())
    for (auto& s : out) s = Complex(s.real(), 0.0);
  return out;
}

void check_zero_proximity(const std::vector<Complex>& samples) {
  double lo = HUGE_VAL;
  double hi = 0.0;
  for (const auto& s : samples) {
    lo = std::min(lo, std::abs(s));
    hi = std::max(hi, std::abs(s));
  }
  if (!(lo > kZeroProximity * hi)) {
    std::ostringstream os;
    os << "symbol comes too close to zero on the grid: min|a| = " << lo << ", max|a| = " << hi;
    throw ZeroProximityError(os.str(), lo, hi);
  }
}

// Phase increments arg(a_{j+1} / a_j) in (-pi, pi], including the closing step.
std::vector<double> phase_increments(const std::vector<Complex>& samples) {
  const std::size_t n = samples.size();
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    double step = std::arg(samples[(j + 1) % n] / samples[j]);
    if (step <= -std::numbers::pi) step += 2.0 * std::numbers::pi;
    d[j] = step;
  }
  return d;
}

int winding_from(const std::vector<double>& increments) {
  double total = 0.0;
  for (double d : increments) total += d;
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace

TrigPolynomial::TrigPolynomial(const std::map<int, Complex>& coeffs) {
  for (const auto& [k, c] : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw PreconditionError("TrigPolynomial: coefficient " + std::to_string(k) + " is not finite");
    if (c != Complex{}) coeffs_.emplace(k, c);
  }
}

TrigPolynomial TrigPolynomial::constant(Complex c) { return TrigPolynomial({{0, c}}); }

TrigPolynomial TrigPolynomial::monomial(int k, Complex c) { return TrigPolynomial({{k, c}}); }

TrigPolynomial TrigPolynomial::exp_of(const TrigPolynomial& p, double rel_tol) {
  // Sample exp(p) on finer grids until the coefficients near the Nyquist offset vanish.
  const int band = std::max(1, p.bandwidth());
  const double tol = std::max(rel_tol, 4.0 * std::numeric_limits<double>::epsilon());
  for (int n = 64; n <= (1 << 18); n *= 2) {
    if (n < 16 * band) continue;
    const auto w = roots_of_unity(n);
    auto samples = sample(p, n, w);
    for (auto& s : samples) s = std::exp(s);
    const int half = n / 2 - 1;
    std::map<int, Complex> coeffs;
    double peak = 0.0;
    for (int k = -half; k <= half; ++k) {
      Complex c{};
      for (int j = 0; j < n; ++j)
        c += samples[static_cast<std::size_t>(j)] * std::conj(w[static_cast<std::size_t>(mod(static_cast<long long>(k) * j, n))]);
      c /= static_cast<double>(n);
      coeffs[k] = c;
      peak = std::max(peak, std::abs(c));
    }
    const double edge = std::max(std::abs(coeffs[half]), std::abs(coeffs[-half]));
    if (edge > tol * peak && n < (1 << 18)) continue;
    std::map<int, Complex> kept;
    for (const auto& [k, c] : coeffs)
      if (std::abs(c) > tol * peak) kept.emplace(k, c);
    TrigPolynomial out(kept);
    if (p.is_real_valued()) {
      // exp of a real symbol is real: enforce exact conjugate symmetry.
      std::map<int, Complex> sym;
      for (const auto& [k, c] : out.coeffs_) {
        if (k < 0) continue;
        if (k == 0) {
          sym[0] = Complex(c.real(), 0.0);
        } else {
          const Complex avg = 0.5 * (c + std::conj(out.coeff(-k)));
          sym[k] = avg;
          sym[-k] = std::conj(avg);
        }
      }
      return TrigPolynomial(sym);
    }
    return out;
  }
  throw ConvergenceError("exp_of: Fourier coefficients did not decay on the finest grid", 1 << 18);
}

Complex TrigPolynomial::coeff(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

int TrigPolynomial::min_offset() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }

int TrigPolynomial::max_offset() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

int TrigPolynomial::bandwidth() const { return std::max(std::abs(min_offset()), std::abs(max_offset())); }

bool TrigPolynomial::is_real_valued(double tol) const {
  for (const auto& [k, c] : coeffs_)
    if (std::abs(c - std::conj(coeff(-k))) > tol) return false;
  return true;
}

TrigPolynomial TrigPolynomial::reflected() const {
  std::map<int, Complex> out;
  for (const auto& [k, c] : coeffs_) out.emplace(-k, c);
  return TrigPolynomial(out);
}

Complex TrigPolynomial::operator()(double t) const {
  Complex s{};
  for (const auto& [k, c] : coeffs_) s += c * std::polar(1.0, k * t);
  return s;
}

TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
  auto out = a.coeffs_;
  for (const auto& [k, c] : b.coeffs_) out[k] += c;
  return TrigPolynomial(out);
}

TrigPolynomial operator-(const TrigPolynomial& a, const TrigPolynomial& b) { return a + Complex(-1.0) * b; }

TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b) {
  std::map<int, Complex> out;
  for (const auto& [i, x] : a.coeffs_)
    for (const auto& [j, y] : b.coeffs_) out[i + j] += x * y;
  return TrigPolynomial(out);
}

TrigPolynomial operator*(Complex s, const TrigPolynomial& a) {
  std::map<int, Complex> out;
  for (const auto& [k, c] : a.coeffs_) out[k] = s * c;
  return TrigPolynomial(out);
}

Complex LogSymbolData::coeff(int k) const {
  const auto it = coeffs.find(k);
  return it == coeffs.end() ? Complex{} : it->second;
}

int winding_number(const TrigPolynomial& a, int grid) {
  if (grid < 3) throw PreconditionError("winding_number: grid must have at least 3 points");
  const auto samples = sample(a, grid, roots_of_unity(grid));
  check_zero_proximity(samples);
  return winding_from(phase_increments(samples));
}

LogSymbolData log_coefficients(const TrigPolynomial& a, int grid, int max_offset) {
  if (!is_power_of_two(grid)) throw PreconditionError("log_coefficients: grid size must be a power of two");
  if (max_offset < 0 || grid < 4 * max_offset)
    throw PreconditionError("log_coefficients: need grid >= 4 * max_offset");

  const auto w = roots_of_unity(grid);
  const auto samples = sample(a, grid, w);
  check_zero_proximity(samples);
  const auto increments = phase_increments(samples);
  if (const int wind = winding_from(increments); wind != 0)
    throw BranchError("log_coefficients: symbol has winding number " + std::to_string(wind), wind);

  // Continuous branch: principal log at t = 0, then accumulated phase.
  std::vector<Complex> logs(samples.size());
  double phase = std::arg(samples[0]);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    logs[j] = Complex(std::log(std::abs(samples[j])), phase);
    phase += increments[j];
  }

  LogSymbolData out;
  out.grid_size = grid;
  out.max_offset = max_offset;
  const long double inv = 1.0L / grid;
  for (int k = 0; k <= max_offset; ++k) {
    std::complex<long double> pos{};
    std::complex<long double> neg{};
    for (int j = 0; j < grid; ++j) {
      const Complex& root = w[static_cast<std::size_t>(mod(static_cast<long long>(k) * j, grid))];
      const std::complex<long double> v(logs[static_cast<std::size_t>(j)]);
      const std::complex<long double> r(root);
      pos += v * std::conj(r);
      neg += v * r;
    }
    out.coeffs[k] = Complex(pos * inv);
    if (k != 0) out.coeffs[-k] = Complex(neg * inv);
  }
  return out;
}

Complex geometric_mean(const TrigPolynomial& a, int grid) { return std::exp(log_coefficients(a, grid, 0).coeff(0)); }

StrongSzegoConstant strong_szego_constant(const TrigPolynomial& a, int truncation, int grid) {
  const auto logs = log_coefficients(a, grid, truncation);
  Complex sum{};
  for (int k = 1; k <= truncation; ++k) sum += static_cast<double>(k) * logs.coeff(k) * logs.coeff(-k);

  // Geometric extrapolation of the coefficient decay over [K/2, K].
  double tail = 0.0;
  if (truncation >= 2) {
    auto mag = [&](int k) { return std::max(std::abs(logs.coeff(k)), std::abs(logs.coeff(-k))); };
    const int mid = truncation / 2;
    const double m_end = mag(truncation);
    const double m_mid = mag(mid);
    double scale = 0.0;
    for (const auto& [k, c] : logs.coeffs) scale = std::max(scale, std::abs(c));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (m_end <= floor) {
      // already at round-off: whatever was dropped is no larger than the noise it would be summed with
      tail = truncation * floor * floor;
    } else if (m_mid > 0.0) {
      const double rho = std::pow(m_end / m_mid, 1.0 / (truncation - mid));
      if (rho >= 1.0) {
        tail = HUGE_VAL;
      } else {
        const double q = rho * rho;
        tail = m_end * m_end * (truncation * q / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
      }
    }
  }
  return {std::exp(sum), tail, truncation};
}

Complex symbol_average(const TrigPolynomial& a, const TestFunction& g, int grid) {
  if (grid < 1) throw PreconditionError("symbol_average: grid must be positive");
  const auto samples = sample(a, grid, roots_of_unity(grid));
  std::complex<long double> sum{};
  for (const auto& s : samples) sum += std::complex<long double>(g(s));
  return Complex(sum / static_cast<long double>(grid));
}

}  // namespace szegolab
