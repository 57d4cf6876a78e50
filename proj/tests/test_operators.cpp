#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "szegolab/operators.hpp"

using namespace szegolab;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

TrigPolynomial z() { return TrigPolynomial::monomial(1); }
TrigPolynomial zinv() { return TrigPolynomial::monomial(-1); }

TrigPolynomial random_symbol(std::mt19937& rng, int bw, bool real) {
  std::normal_distribution<double> g;
  std::map<int, Complex> c;
  for (int k = -bw; k <= bw; ++k) c[k] = {g(rng), g(rng)};
  if (real) {
    c[0] = {std::abs(c[0].real()) + 4.0 * bw + 1.0, 0.0};
    for (int k = 1; k <= bw; ++k) c[-k] = std::conj(c[k]);
  }
  return TrigPolynomial(c);
}

BandAPOperator random_band(std::mt19937& rng, double alpha) {
  std::normal_distribution<double> g;
  std::map<int, APFunction> diags;
  for (int d = -2; d <= 2; ++d)
    diags.emplace(d, APFunction({{0.0, {g(rng), g(rng)}}, {alpha, {g(rng), g(rng)}}, {2 * alpha, {g(rng), 0.0}}}));
  return BandAPOperator(diags);
}

}  // namespace

TEST_CASE("toeplitz_section examples") {
  const Matrix c = toeplitz_section(TrigPolynomial::constant(4.0), 1);
  CHECK(c.rows() == 1);
  CHECK(c(0, 0) == Complex(4.0));

  const Matrix t = toeplitz_section(z() + zinv(), 3);
  Matrix expect = Matrix::Zero(3, 3);
  expect(0, 1) = expect(1, 0) = expect(1, 2) = expect(2, 1) = 1.0;
  CHECK(t == expect);

  const Matrix s = toeplitz_section(z(), 3);
  CHECK(s(1, 0) == Complex(1.0));
  CHECK(s(2, 1) == Complex(1.0));
  CHECK(s(0, 1) == Complex(0.0));
  CHECK(lu_logdet(s).singular);
}

TEST_CASE("band_ap_section examples") {
  const auto a = z() + TrigPolynomial::constant(2.0) + 3.0 * TrigPolynomial::monomial(-2);
  CHECK(band_ap_section(BandAPOperator::toeplitz(a), SectionKind::P, 6) == toeplitz_section(a, 6));

  const auto b = APFunction::cosine(1.0, kGolden, 0.1);
  const Matrix d = band_ap_section(BandAPOperator::multiplication(b), SectionKind::P, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(d(i, j) == (i == j ? b(i) : Complex(0.0)));

  const double alpha = 0.3;
  const Matrix r = band_ap_section(almost_mathieu({alpha, 1.0, 0.0}), SectionKind::R, 1);
  REQUIRE(r.rows() == 2);
  CHECK(std::abs(r(0, 0) - std::cos(2 * M_PI * -alpha)) < 1e-15);
  CHECK(r(0, 1) == Complex(1.0));
  CHECK(r(1, 0) == Complex(1.0));
  CHECK(std::abs(r(1, 1) - 1.0) < 1e-15);
}

TEST_CASE("almost_mathieu examples") {
  const auto free = almost_mathieu({kGolden, 0.0, 0.3});
  REQUIRE(free.toeplitz_symbol().has_value());
  CHECK(*free.toeplitz_symbol() == z() + zinv());

  const auto h = almost_mathieu({0.25, 2.0, 0.0});
  CHECK(std::abs(h.entry(5, 5)) < 1e-15);
  CHECK(h.bandwidth() == 1);
  CHECK(h.entry(4, 5) == Complex(1.0));
}

TEST_CASE("flip_section examples") {
  const auto a = z() + 2.0 * zinv() + TrigPolynomial::monomial(2, {0.0, 1.0});
  CHECK(flip_section(BandAPOperator::toeplitz(a), 5) == toeplitz_section(a.reflected(), 5));

  const auto b = APFunction::cosine(1.0, kGolden, 0.0) + APFunction::constant(0.5);
  const Matrix f = flip_section(BandAPOperator::multiplication(b), 4);
  for (int i = 0; i < 4; ++i) CHECK(f(i, i) == b(-1 - i));
}

TEST_CASE("reversed_section examples") {
  const auto a = z() + 2.0 * zinv() + TrigPolynomial::monomial(2, {0.0, 1.0});
  CHECK(reversed_section(BandAPOperator::toeplitz(a), 6) == toeplitz_section(a.reflected(), 6));
  const auto h = almost_mathieu({kGolden, 1.3, 0.2});
  CHECK(reversed_section(h, 1) == band_ap_section(h, SectionKind::P, 1));
}

TEST_CASE("main_diagonal examples") {
  const auto t = main_diagonal(BandAPOperator::toeplitz(z() + TrigPolynomial::constant(3.0)));
  CHECK(t.is_constant());
  CHECK(t(17) == Complex(3.0));

  const auto h = main_diagonal(almost_mathieu({kGolden, 2.0, 0.1}));
  for (long long n = -5; n <= 5; ++n) CHECK(std::abs(h(n) - 2.0 * std::cos(2 * M_PI * (n * kGolden + 0.1))) < 1e-13);

  const auto sum = almost_mathieu({kGolden, 1.0, 0.0}) + BandAPOperator::toeplitz(TrigPolynomial::constant(2.0));
  CHECK(std::abs(main_diagonal(sum)(3) - (2.0 + std::cos(2 * M_PI * 3 * kGolden))) < 1e-13);
}

TEST_CASE("composite_sections examples") {
  const auto single = CompositeOperator::product({ToeplitzFactor{z() + 2.0 * zinv()}});
  const auto s = composite_sections(single, 6);
  CHECK((s.product_of_sections - s.section_of_product).cwiseAbs().maxCoeff() == 0.0);

  const auto pp = CompositeOperator::product({ProjectionP{}, ProjectionP{}});
  const auto p = composite_sections(pp, 5);
  CHECK(p.product_of_sections == Matrix::Identity(5, 5));
  CHECK(p.section_of_product == Matrix::Identity(5, 5));

  // T(z^{-1}) T(z) = I on the half line, while the sections miss the last corner entry
  const auto left = CompositeOperator::product({ToeplitzFactor{zinv()}, ToeplitzFactor{z()}});
  const auto l = composite_sections(left, 4);
  Matrix corner = Matrix::Zero(4, 4);
  corner(3, 3) = -1.0;
  CHECK((l.product_of_sections - l.section_of_product - corner).cwiseAbs().maxCoeff() == 0.0);

  // T(z) T(z^{-1}) = I - e_0 e_0^T, which the sections reproduce exactly
  const auto right = CompositeOperator::product({ToeplitzFactor{z()}, ToeplitzFactor{zinv()}});
  const auto r = composite_sections(right, 4);
  CHECK((r.product_of_sections - r.section_of_product).cwiseAbs().maxCoeff() == 0.0);
  Matrix proj = Matrix::Identity(4, 4);
  proj(0, 0) = 0.0;
  CHECK(r.section_of_product == proj);

  CHECK_THROWS_AS(composite_sections(left, 4, 4), TruncationError);
}

TEST_CASE("composite symbol and multiplier rejection") {
  const auto e = CompositeOperator(
      {{1.0, {ToeplitzFactor{z()}, ToeplitzFactor{zinv()}}}, {2.0, {ToeplitzFactor{z()}, ProjectionP{}}}});
  CHECK(e.symbol() == TrigPolynomial::constant(1.0) + 2.0 * z());
  const auto m = CompositeOperator::product({APMultiplier{APFunction::exponential(kGolden)}, ToeplitzFactor{z()}});
  CHECK_THROWS_AS(m.symbol(), MethodMismatchError);
}

TEST_CASE("property: Toeplitz-constant band sections equal Toeplitz sections") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_symbol(rng, 1 + static_cast<int>(rng() % 4), false);
    const Index n = 1 + static_cast<Index>(rng() % 20);
    CHECK(band_ap_section(BandAPOperator::toeplitz(a), SectionKind::P, n) == toeplitz_section(a, n));
  }
}

TEST_CASE("property: reversed sections have the same determinant") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const auto op = random_band(rng, kGolden);
    const Index n = 1 + static_cast<Index>(rng() % 30);
    const LogDet a = lu_logdet(band_ap_section(op, SectionKind::P, n));
    const LogDet b = lu_logdet(reversed_section(op, n));
    CHECK(std::abs(a.log_abs - b.log_abs) < 1e-10);
  }
}

TEST_CASE("property: Hermitian data gives exactly Hermitian sections") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_symbol(rng, 3, true);
    const Index n = 1 + static_cast<Index>(rng() % 25);
    CHECK(hermitian_defect(toeplitz_section(a, n)) == 0.0);
    const auto h = almost_mathieu({u(rng), 4.0 * u(rng), u(rng)});
    CHECK(hermitian_defect(band_ap_section(h, SectionKind::P, n)) == 0.0);
    CHECK(hermitian_defect(band_ap_section(h, SectionKind::R, n)) == 0.0);
  }
}

TEST_CASE("property: almost Mathieu R sections are flip invariant when theta = alpha / 2") {
  std::mt19937 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = u(rng);
    const auto h = almost_mathieu({alpha, 3.0 * u(rng), alpha / 2.0});
    const Index n = 1 + static_cast<Index>(rng() % 20);
    const Matrix s = band_ap_section(h, SectionKind::R, n);
    // row r of the matrix is lattice index r - n, and -1 - (r - n) sits at row 2n - 1 - r
    CHECK((s - s.reverse()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("theta = 0 almost Mathieu sections are not flip invariant") {
  const Matrix s = band_ap_section(almost_mathieu({kGolden, 1.0, 0.0}), SectionKind::R, 4);
  CHECK((s - s.reverse()).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("property: the corner of the inverse agrees for a and its reflection") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    std::normal_distribution<double> g;
    std::map<int, Complex> c{{0, 6.0}};
    for (int k = 1; k <= 2; ++k) {
      const Complex v{g(rng), g(rng)};
      c[k] += v;
      c[-k] += std::conj(v);
    }
    const TrigPolynomial a(c);
    for (Index n : {8, 32, 128}) {
      Vector e0 = Vector::Zero(n);
      e0(0) = 1.0;
      const Complex lhs = solve(toeplitz_section(a, n), e0)(0);
      const Complex rhs = solve(toeplitz_section(a.reflected(), n), e0)(0);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("finite_section of a composite equals the cropped product") {
  const auto e = CompositeOperator::product({ToeplitzFactor{z() + 2.0 * zinv()}, ToeplitzFactor{3.0 * z()}});
  const Matrix big = toeplitz_section(z() + 2.0 * zinv(), 20) * toeplitz_section(3.0 * z(), 20);
  CHECK((finite_section(e, 7) - big.topLeftCorner(7, 7)).cwiseAbs().maxCoeff() < 1e-14);
}
