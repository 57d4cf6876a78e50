#pragma once

// Almost periodic sequences on Z, continued fractions and distinguished sequences.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "szegolab/numkernel.hpp"

namespace szegolab {

/// e^{2 pi i turns}, exact at multiples of 1/4.
Complex unit_phase(double turns);

/// a(n) = sum_j c_j e^{2 pi i alpha_j n} with finitely many frequencies alpha_j in [0, 1).
class APFunction {
 public:
  struct Term {
    double freq = 0.0;
    Complex coeff{};
  };

  /// Frequencies closer than this (mod 1) are merged.
  static constexpr double kFrequencyTolerance = 1e-12;

  APFunction() = default;
  /// Reduces frequencies mod 1 and merges duplicates by adding their coefficients.
  explicit APFunction(const std::vector<Term>& terms);

  static APFunction constant(Complex c);
  static APFunction exponential(double alpha, Complex c = 1.0);
  /// lambda cos 2 pi (n alpha + theta)
  static APFunction cosine(double lambda, double alpha, double theta);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Every term has a conjugate partner, so a(n) is real for all n.
  bool is_real_valued() const noexcept { return real_valued_; }

  Complex operator()(long long n) const;

  /// sum |c_j|, a bound for sup |a(n)|
  double sup_bound() const;

  /// A base frequency alpha with every frequency an integer multiple of alpha (mod 1),
  /// preferring frequencies in the order the terms were given. Empty for constant functions
  /// or rationally independent frequencies.
  std::optional<double> base_frequency(int max_multiple = 64) const;

  friend APFunction operator+(const APFunction& a, const APFunction& b);
  friend APFunction operator*(Complex s, const APFunction& a);
  /// Pointwise product (frequencies add).
  friend APFunction operator*(const APFunction& a, const APFunction& b);

 private:
  std::vector<Term> terms_;
  bool real_valued_ = true;
};

inline Complex eval_ap(const APFunction& a, long long n) { return a(n); }

/// M(a): the coefficient at frequency 0.
Complex mean_value(const APFunction& a);

/// (1/N) sum_{r=0}^{N-1} a(r)
Complex empirical_mean(const APFunction& a, long long count);

/// Term-wise bound sum_j |c_j| |e^{2 pi i alpha_j k} - 1| on sup_n |a(n + k) - a(n)|.
double shift_defect(const APFunction& a, long long k);

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 0;
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Continued fraction of a real alpha in (0, 1): alpha = 1/(b_1 + 1/(b_2 + ...)).
struct ContinuedFraction {
  enum class Termination { MaxTerms, QCap, Rational };

  double alpha = 0.0;
  std::vector<std::int64_t> quotients;   ///< b_1 .. b_m
  std::vector<Convergent> convergents;   ///< p_n / q_n for n = 1 .. m
  Termination termination = Termination::MaxTerms;

  /// |alpha q_n - p_n| < 1 / q_{n+1}, evaluated exactly on the binary value of alpha.
  /// `index` is 1-based; requires index < convergents.size().
  bool interior_bound_holds(std::size_t index) const;
};

std::string to_string(ContinuedFraction::Termination t);

inline constexpr double kRationalResidual = 1e-15;
inline constexpr std::int64_t kDefaultQCap = 1'000'000;

/// Floor-and-invert expansion, carried out in exact integer arithmetic on the binary value
/// of alpha. Stops after max_terms quotients, before the first q_n > q_cap, or when the
/// remaining fractional part drops below kRationalResidual.
ContinuedFraction expand_cf(double alpha, int max_terms = 64, std::int64_t q_cap = kDefaultQCap);

struct RationalFrequency {
  std::int64_t p = 0;
  std::int64_t q = 1;
};
struct IrrationalFrequency {
  double alpha = 0.0;
};
using FrequencyBase = std::variant<RationalFrequency, IrrationalFrequency>;

struct DistinguishedSequence {
  enum class Source { RationalPeriod, CfDenominators };
  std::vector<long long> values;
  Source source = Source::RationalPeriod;
};

/// h(n) = q n for rational p/q; h(n) = q_n (strictly increasing CF denominators) otherwise.
DistinguishedSequence distinguished_sequence(const FrequencyBase& base, std::size_t length);

}  // namespace szegolab
