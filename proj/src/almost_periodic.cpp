#include "szegolab/almost_periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace szegolab {

namespace {

using i128 = __int128;

double frac(double x) {
  const double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

// Distance of x to the nearest integer.
double circular_distance(double x) {
  const double f = frac(x);
  return std::min(f, 1.0 - f);
}

double normalize_frequency(double f) {
  const double r = frac(f);
  return circular_distance(r) < APFunction::kFrequencyTolerance ? 0.0 : r;
}

}  // namespace

Complex unit_phase(double turns) {
  const double f = frac(turns);
  if (f == 0.0) return {1.0, 0.0};
  if (f == 0.25) return {0.0, 1.0};
  if (f == 0.5) return {-1.0, 0.0};
  if (f == 0.75) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * f);
}

APFunction::APFunction(const std::vector<Term>& terms) {
  for (const auto& t : terms) {
    if (!std::isfinite(t.freq) || !std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      throw PreconditionError("APFunction: non-finite term");
    const double f = normalize_frequency(t.freq);
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& u) { return circular_distance(u.freq - f) < kFrequencyTolerance; });
    if (it == terms_.end())
      terms_.push_back({f, t.coeff});
    else
      it->coeff += t.coeff;
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff == Complex{}; });
  // Conjugate-paired terms (frequency -f with coefficient conj(c)) make a(n) real.
  real_valued_ = std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
    const double partner = normalize_frequency(-t.freq);
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& u) {
      return circular_distance(u.freq - partner) < kFrequencyTolerance && u.coeff == std::conj(t.coeff);
    });
  });
}

APFunction APFunction::constant(Complex c) { return APFunction({{0.0, c}}); }

APFunction APFunction::exponential(double alpha, Complex c) { return APFunction({{alpha, c}}); }

APFunction APFunction::cosine(double lambda, double alpha, double theta) {
  const Complex half = 0.5 * lambda;
  const Complex c = half * unit_phase(theta);
  return APFunction({{alpha, c}, {-alpha, std::conj(c)}});
}

bool APFunction::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().freq == 0.0);
}

Complex APFunction::operator()(long long n) const {
  Complex sum{};
  for (const auto& t : terms_) {
    const long double turns = static_cast<long double>(t.freq) * static_cast<long double>(n);
    const long double reduced = turns - std::floor(turns);
    sum += t.coeff * unit_phase(static_cast<double>(reduced));
  }
  return real_valued_ ? Complex(sum.real(), 0.0) : sum;
}

double APFunction::sup_bound() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

std::optional<double> APFunction::base_frequency(int max_multiple) const {
  for (const auto& candidate : terms_) {
    if (candidate.freq == 0.0) continue;
    const bool generates = std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
      for (int m = -max_multiple; m <= max_multiple; ++m)
        if (circular_distance(m * candidate.freq - t.freq) < 1e-9) return true;
      return false;
    });
    if (generates) return candidate.freq;
  }
  return std::nullopt;
}

APFunction operator+(const APFunction& a, const APFunction& b) {
  auto terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return APFunction(terms);
}

APFunction operator*(Complex s, const APFunction& a) {
  auto terms = a.terms_;
  for (auto& t : terms) t.coeff *= s;
  return APFunction(terms);
}

APFunction operator*(const APFunction& a, const APFunction& b) {
  std::vector<APFunction::Term> terms;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) terms.push_back({x.freq + y.freq, x.coeff * y.coeff});
  return APFunction(terms);
}

Complex mean_value(const APFunction& a) {
  for (const auto& t : a.terms())
    if (t.freq == 0.0) return t.coeff;
  return {};
}

Complex empirical_mean(const APFunction& a, long long count) {
  if (count <= 0) throw PreconditionError("empirical_mean: count must be positive");
  Complex sum{};
  for (long long r = 0; r < count; ++r) sum += a(r);
  return sum / static_cast<double>(count);
}

double shift_defect(const APFunction& a, long long k) {
  double s = 0.0;
  for (const auto& t : a.terms()) {
    const long double turns = static_cast<long double>(t.freq) * static_cast<long double>(k);
    const double reduced = static_cast<double>(turns - std::floor(turns));
    s += std::abs(t.coeff) * std::abs(unit_phase(reduced) - Complex(1.0, 0.0));
  }
  return s;
}

std::string to_string(ContinuedFraction::Termination t) {
  switch (t) {
    case ContinuedFraction::Termination::MaxTerms:
      return "max_terms";
    case ContinuedFraction::Termination::QCap:
      return "q_cap";
    case ContinuedFraction::Termination::Rational:
      return "rational";
  }
  return "unknown";
}

namespace {

// alpha = mantissa / denominator exactly, denominator a power of two.
struct ExactBinary {
  i128 mantissa = 0;
  i128 denominator = 1;
  bool representable = false;
};

ExactBinary exact_binary(double alpha) {
  int exponent = 0;
  const double f = std::frexp(alpha, &exponent);  // alpha = f 2^exponent, f in [0.5, 1)
  const int shift = 53 - exponent;
  ExactBinary out;
  if (shift > 125) return out;
  out.mantissa = static_cast<i128>(std::ldexp(f, 53));
  out.denominator = static_cast<i128>(1) << shift;
  // Strip common factors of two to keep the numbers small.
  while (out.mantissa % 2 == 0 && out.denominator % 2 == 0) {
    out.mantissa /= 2;
    out.denominator /= 2;
  }
  out.representable = true;
  return out;
}

bool checked_mul(i128 a, i128 b, i128& out) { return !__builtin_mul_overflow(a, b, &out); }

}  // namespace

bool ContinuedFraction::interior_bound_holds(std::size_t index) const {
  if (index == 0 || index >= convergents.size())
    throw PreconditionError("interior_bound_holds: index must satisfy 1 <= n < number of convergents");
  const auto& c = convergents[index - 1];
  const auto& next = convergents[index];
  const ExactBinary x = exact_binary(alpha);
  if (x.representable) {
    // |M q - p D| q' < D  <=>  |alpha q - p| < 1/q'
    i128 mq = 0;
    i128 pd = 0;
    i128 lhs = 0;
    if (checked_mul(x.mantissa, c.q, mq) && checked_mul(static_cast<i128>(c.p), x.denominator, pd)) {
      const i128 diff = mq >= pd ? mq - pd : pd - mq;
      if (checked_mul(diff, next.q, lhs)) return lhs < x.denominator;
    }
  }
  const long double err = std::fabs(static_cast<long double>(alpha) * c.q - static_cast<long double>(c.p));
  return err * static_cast<long double>(next.q) < 1.0L;
}

ContinuedFraction expand_cf(double alpha, int max_terms, std::int64_t q_cap) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("expand_cf: alpha must lie in (0, 1)");
  ContinuedFraction cf;
  cf.alpha = alpha;
  if (max_terms <= 0) {
    cf.termination = ContinuedFraction::Termination::MaxTerms;
    return cf;
  }
  const ExactBinary x = exact_binary(alpha);
  if (!x.representable) {
    // floor(1/alpha) exceeds 2^72: the first denominator is already beyond any int64 cap.
    cf.termination = ContinuedFraction::Termination::QCap;
    return cf;
  }

  // Euclid on (num / den) = current fractional part.
  i128 num = x.mantissa;
  i128 den = x.denominator;
  i128 p_prev = 1, p_cur = 0;  // p_{-1}, p_0
  i128 q_prev = 0, q_cur = 1;  // q_{-1}, q_0
  while (true) {
    const i128 b = den / num;
    if (b > std::numeric_limits<std::int64_t>::max()) {
      cf.termination = ContinuedFraction::Termination::QCap;
      return cf;
    }
    const i128 rem = den - b * num;
    const i128 p_next = b * p_cur + p_prev;
    const i128 q_next = b * q_cur + q_prev;
    if (q_next > q_cap || q_next > std::numeric_limits<std::int64_t>::max()) {
      cf.termination = ContinuedFraction::Termination::QCap;
      return cf;
    }
    cf.quotients.push_back(static_cast<std::int64_t>(b));
    cf.convergents.push_back({static_cast<std::int64_t>(p_next), static_cast<std::int64_t>(q_next)});
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
    if (rem == 0 || static_cast<long double>(rem) / static_cast<long double>(num) < kRationalResidual) {
      cf.termination = ContinuedFraction::Termination::Rational;
      return cf;
    }
    if (static_cast<int>(cf.quotients.size()) >= max_terms) {
      cf.termination = ContinuedFraction::Termination::MaxTerms;
      return cf;
    }
    den = num;
    num = rem;
  }
}

DistinguishedSequence distinguished_sequence(const FrequencyBase& base, std::size_t length) {
  DistinguishedSequence out;
  if (const auto* r = std::get_if<RationalFrequency>(&base)) {
    if (r->q <= 0) throw PreconditionError("distinguished_sequence: rational frequency needs q > 0");
    const std::int64_t g = std::gcd(r->p, r->q);
    const std::int64_t period = r->q / (g == 0 ? 1 : g);
    out.source = DistinguishedSequence::Source::RationalPeriod;
    for (std::size_t n = 1; n <= length; ++n) out.values.push_back(period * static_cast<std::int64_t>(n));
    return out;
  }
  const double alpha = std::get<IrrationalFrequency>(base).alpha;
  out.source = DistinguishedSequence::Source::CfDenominators;
  const auto cf = expand_cf(alpha, static_cast<int>(length) + 8, std::numeric_limits<std::int64_t>::max() / 4);
  for (const auto& c : cf.convergents) {
    if (out.values.size() == length) break;
    if (out.values.empty() || c.q > out.values.back()) out.values.push_back(c.q);
  }
  if (out.values.size() < length)
    throw PreconditionError("distinguished_sequence: continued fraction of alpha ended after " +
                            std::to_string(out.values.size()) + " denominators (" + to_string(cf.termination) + ")");
  return out;
}

}  // namespace szegolab
