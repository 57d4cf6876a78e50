#include "szegolab/operators.hpp"

#include <algorithm>
#include <cstdlib>

namespace szegolab {

BandAPOperator::BandAPOperator(std::map<int, APFunction> diagonals, Lattice lattice) : lattice_(lattice) {
  for (auto& [d, f] : diagonals)
    if (!f.is_zero()) diagonals_.emplace(d, std::move(f));
}

BandAPOperator BandAPOperator::toeplitz(const TrigPolynomial& a, Lattice lattice) {
  std::map<int, APFunction> diags;
  for (const auto& [k, c] : a.coeffs()) diags.emplace(k, APFunction::constant(c));
  return BandAPOperator(std::move(diags), lattice);
}

BandAPOperator BandAPOperator::multiplication(const APFunction& b, Lattice lattice) {
  return BandAPOperator({{0, b}}, lattice);
}

int BandAPOperator::bandwidth() const {
  int w = 0;
  for (const auto& [d, f] : diagonals_) w = std::max(w, std::abs(d));
  return w;
}

Complex BandAPOperator::entry(long long i, long long j) const {
  if (lattice_ == Lattice::HalfLine && (i < 0 || j < 0)) return {};
  const long long d = i - j;
  if (std::llabs(d) > bandwidth()) return {};
  const auto it = diagonals_.find(static_cast<int>(d));
  return it == diagonals_.end() ? Complex{} : it->second(j);
}

std::optional<TrigPolynomial> BandAPOperator::toeplitz_symbol() const {
  std::map<int, Complex> coeffs;
  for (const auto& [d, f] : diagonals_) {
    if (!f.is_constant()) return std::nullopt;
    coeffs.emplace(d, mean_value(f));
  }
  return TrigPolynomial(coeffs);
}

BandAPOperator operator+(const BandAPOperator& a, const BandAPOperator& b) {
  auto diags = a.diagonals_;
  for (const auto& [d, f] : b.diagonals_) {
    auto it = diags.find(d);
    if (it == diags.end())
      diags.emplace(d, f);
    else
      it->second = it->second + f;
  }
  return BandAPOperator(std::move(diags), a.lattice_);
}

BandAPOperator operator*(Complex s, const BandAPOperator& a) {
  auto diags = a.diagonals_;
  for (auto& [d, f] : diags) f = s * f;
  return BandAPOperator(std::move(diags), a.lattice_);
}

BandAPOperator BandAPOperator::shifted(Complex c) const {
  return *this + BandAPOperator({{0, APFunction::constant(c)}}, lattice_);
}

BandAPOperator almost_mathieu(const AlmostMathieuParams& p) {
  std::map<int, APFunction> diags;
  diags.emplace(-1, APFunction::constant(1.0));
  diags.emplace(1, APFunction::constant(1.0));
  diags.emplace(0, APFunction::cosine(p.lambda, p.alpha, p.theta));
  return BandAPOperator(std::move(diags), Lattice::Integers);
}

Matrix toeplitz_section(const TrigPolynomial& a, Index n) {
  if (n < 1) throw PreconditionError("toeplitz_section: n must be positive");
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [k, c] : a.coeffs()) {
    if (std::abs(k) >= n) continue;
    for (Index j = std::max<Index>(0, -k); j < n && j + k < n; ++j) m(j + k, j) = c;
  }
  return m;
}

namespace {

// Dense section over the index window [first, first + n), honoring the band.
Matrix window_section(const BandAPOperator& a, long long first, Index n) {
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [d, f] : a.diagonals()) {
    if (std::abs(d) >= n) continue;
    for (Index c = std::max<Index>(0, -d); c < n && c + d < n; ++c) m(c + d, c) = a.entry(first + c + d, first + c);
  }
  return m;
}

}  // namespace

Matrix band_ap_section(const BandAPOperator& a, SectionKind kind, Index n) {
  if (n < 1) throw PreconditionError("band_ap_section: n must be positive");
  if (kind == SectionKind::P) return window_section(a, 0, n);
  if (a.lattice() != Lattice::Integers)
    throw PreconditionError("band_ap_section: R_n sections need an operator on Z");
  return window_section(a, -static_cast<long long>(n), 2 * n);
}

Matrix flip_section(const BandAPOperator& a, Index n) {
  if (n < 1) throw PreconditionError("flip_section: n must be positive");
  if (a.lattice() != Lattice::Integers) throw PreconditionError("flip_section: operator must act on Z");
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [d, f] : a.diagonals()) {
    // A(-1-i, -1-j) is nonzero for (-1-i) - (-1-j) = j - i = d
    if (std::abs(d) >= n) continue;
    for (Index i = std::max<Index>(0, -d); i < n && i + d < n; ++i) {
      const Index j = i + d;
      m(i, j) = a.entry(-1 - i, -1 - j);
    }
  }
  return m;
}

Matrix reversed_section(const Matrix& section) {
  detail::require_square(section, "reversed_section");
  return section.reverse();
}

Matrix reversed_section(const BandAPOperator& a, Index n) {
  return reversed_section(band_ap_section(a, SectionKind::P, n));
}

APFunction main_diagonal(const BandAPOperator& a) {
  const auto it = a.diagonals().find(0);
  return it == a.diagonals().end() ? APFunction() : it->second;
}

CompositeOperator::CompositeOperator(std::vector<ProductTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw PreconditionError("CompositeOperator: needs at least one term");
  for (const auto& t : terms_)
    if (t.factors.empty()) throw PreconditionError("CompositeOperator: every term needs a factor");
}

CompositeOperator CompositeOperator::product(std::vector<Factor> factors) {
  return CompositeOperator({ProductTerm{1.0, std::move(factors)}});
}

int factor_bandwidth(const Factor& f) {
  if (const auto* t = std::get_if<ToeplitzFactor>(&f)) return t->symbol.bandwidth();
  return 0;
}

int CompositeOperator::total_bandwidth() const {
  int w = 0;
  for (const auto& t : terms_) {
    int sum = 0;
    for (const auto& f : t.factors) sum += factor_bandwidth(f);
    w = std::max(w, sum);
  }
  return w;
}

TrigPolynomial CompositeOperator::symbol() const {
  TrigPolynomial total;
  for (const auto& t : terms_) {
    TrigPolynomial prod = TrigPolynomial::constant(t.coeff);
    for (const auto& f : t.factors) {
      if (std::holds_alternative<APMultiplier>(f))
        throw MethodMismatchError("composite symbol is undefined for factors with AP multipliers");
      if (const auto* tf = std::get_if<ToeplitzFactor>(&f)) prod = prod * tf->symbol;
    }
    total = total + prod;
  }
  return total;
}

Matrix factor_section(const Factor& f, Index n) {
  if (const auto* t = std::get_if<ToeplitzFactor>(&f)) return toeplitz_section(t->symbol, n);
  if (const auto* mult = std::get_if<APMultiplier>(&f)) {
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = mult->values(i);
    return m;
  }
  return Matrix::Identity(n, n);
}

Index default_truncation(const CompositeOperator& e, Index n) { return n + 2 * e.total_bandwidth() + 8; }

CompositeSections composite_sections(const CompositeOperator& e, Index n, std::optional<Index> m) {
  if (n < 1) throw PreconditionError("composite_sections: n must be positive");
  const Index big = m.value_or(default_truncation(e, n));
  const Index needed = n + 2 * e.total_bandwidth();
  if (big < needed)
    throw TruncationError("composite_sections: truncation m = " + std::to_string(big) + " is below n + 2 * bandwidth = " +
                          std::to_string(needed));
  CompositeSections out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (const auto& term : e.terms()) {
    Matrix small = Matrix::Identity(n, n);
    Matrix large = Matrix::Identity(big, big);
    for (const auto& f : term.factors) {
      small = small * factor_section(f, n);
      large = large * factor_section(f, big);
    }
    out.product_of_sections += term.coeff * small;
    out.section_of_product += term.coeff * large.topLeftCorner(n, n);
  }
  return out;
}

Matrix finite_section(const OperatorDescription& op, Index n) {
  if (const auto* band = std::get_if<BandAPOperator>(&op)) return band_ap_section(*band, SectionKind::P, n);
  return composite_sections(std::get<CompositeOperator>(op), n).section_of_product;
}

}  // namespace szegolab
