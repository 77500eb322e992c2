#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "k3lab/scalar.hpp"

#include <cmath>
#include <random>

using namespace k3lab;

namespace {

Rational random_rational(std::mt19937& rng, int span = 20) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

long double approx(const Rational& q) { return q.num().convert_to<long double>() / q.den().convert_to<long double>(); }

long double approx(const QuadExt& x) {
  return approx(x.a()) + approx(x.b()) * std::sqrt(x.radicand().convert_to<long double>());
}

}  // namespace

TEST_CASE("rationals normalise sign and common factors") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, -7) == Rational(0));
  CHECK(Rational(-3, 2).den() == 2);
  CHECK(to_string(Rational(10, 4)) == "5/2");
  CHECK(to_string(Rational(-8, 4)) == "-2");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(floor(Rational(7, 2)) == 3);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational(" -5/10 ") == Rational(-1, 2));
  CHECK(parse_rational("+7/3") == Rational(7, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::exception);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}

TEST_CASE("rational field axioms on random samples") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Rational x = random_rational(rng), y = random_rational(rng), z = random_rational(rng);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == Rational(0));
    if (!y.is_zero()) CHECK((x / y) * y == x);
    CHECK(std::abs(approx(x * y) - approx(x) * approx(y)) < 1e-12L);
  }
}

TEST_CASE("quadratic elements canonicalise the radicand") {
  CHECK(QuadExt(0, 1, 8) == QuadExt(0, 2, 2));
  CHECK(QuadExt(Rational(1), Rational(3), 1) == QuadExt(4));
  CHECK(QuadExt(0, 1, 4).is_rational());
  CHECK(QuadExt(0, 1, 4) == QuadExt(2));
  CHECK(QuadExt(5, 0, 7) == QuadExt(5));
  CHECK(to_string(QuadExt(5, 0, 7)) == "5");
  CHECK(QuadExt(5, 0, 7) + QuadExt(0, 1, 2) == QuadExt(5, 1, 2));
  CHECK(to_string(QuadExt(0, Rational(1, 4), 5)) == "0+1/4*sqrt(5)");
  CHECK(to_string(QuadExt(Rational(1, 2))) == "1/2");
  CHECK_THROWS_AS(QuadExt(0, 1, -3), std::exception);
}

TEST_CASE("exact square roots") {
  CHECK(QuadExt::sqrt_of(Rational(5, 16)) == QuadExt(0, Rational(1, 4), 5));
  CHECK(QuadExt::sqrt_of(Rational(9, 4)) == QuadExt(Rational(3, 2)));
  CHECK(QuadExt::sqrt_of(Rational(1, 2)) == QuadExt(0, Rational(1, 2), 2));
  CHECK(QuadExt::sqrt_of(Rational(0)).is_zero());
  CHECK_THROWS_AS(QuadExt::sqrt_of(Rational(-1)), std::domain_error);
  QuadExt m0 = QuadExt::sqrt_of(Rational(5, 16));
  CHECK(m0 * m0 == QuadExt(Rational(5, 16)));
  CHECK((m0 * m0).is_rational());
}

TEST_CASE("exact sign beyond floating point resolution") {
  // 708158977/408855776 is a Pell convergent of sqrt(2): p^2 - 2 q^2 = 1,
  // so the difference is about 3e-18 and positive.
  QuadExt near = QuadExt(Rational(Integer(708158977), Integer(408855776)), Rational(-1), 2);
  CHECK(qe_sign(near) == 1);
  CHECK(qe_sign(-near) == -1);
  // 1351/780 > sqrt(3) since 1351^2 - 3*780^2 = 1.
  CHECK(qe_sign(QuadExt(Rational(1351, 780), Rational(-1), 3)) == 1);
  CHECK(qe_sign(QuadExt(Rational(-1351, 780), Rational(1), 3)) == -1);
  CHECK(qe_sign(QuadExt(Rational(1, 2), Rational(-1, 4), 5)) == -1);  // 1/2 < sqrt(5)/4
  CHECK(qe_sign(QuadExt(0)) == 0);
}

TEST_CASE("sign agrees with a floating oracle away from ties") {
  std::mt19937 rng(11);
  const int radicands[] = {2, 3, 5, 6, 7, 10, 11, 13};
  for (int i = 0; i < 500; ++i) {
    QuadExt x(random_rational(rng), random_rational(rng), radicands[i % 8]);
    long double v = approx(x);
    if (std::abs(v) < 1e-9L) continue;
    CHECK(qe_sign(x) == (v > 0 ? 1 : -1));
  }
}

TEST_CASE("field operations in Q(sqrt n)") {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    QuadExt x(random_rational(rng), random_rational(rng), 5);
    QuadExt y(random_rational(rng), random_rational(rng), 5);
    QuadExt z(random_rational(rng), random_rational(rng), 5);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * x.conjugate() == QuadExt(x.norm()));
    if (!y.is_zero()) CHECK((x / y) * y == x);
    CHECK(std::abs(approx(x * y) - approx(x) * approx(y)) < 1e-9L);
  }
  CHECK_THROWS_AS(QuadExt(0, 1, 2) + QuadExt(0, 1, 3), std::domain_error);
  CHECK_NOTHROW(QuadExt(0, 1, 2) + QuadExt(Rational(1, 3)));
}

TEST_CASE("ordering of quadratic elements") {
  QuadExt m0 = QuadExt::sqrt_of(Rational(5, 16));
  CHECK(qe_compare(QuadExt(Rational(1, 2)), m0) == std::strong_ordering::less);
  CHECK(qe_compare(QuadExt(Rational(13, 25)), m0) == std::strong_ordering::less);
  CHECK(qe_compare(QuadExt(Rational(57, 100)), m0) == std::strong_ordering::greater);
  CHECK(qe_compare(m0, m0) == std::strong_ordering::equal);
}

TEST_CASE("textual round trip") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    QuadExt x(random_rational(rng), random_rational(rng), 2 + i % 5);
    CHECK(parse_quadext(to_string(x)) == x);
    CHECK(parse_quadext(to_pretty(x)) == x);
  }
  CHECK(parse_quadext("sqrt(5)") == QuadExt(0, 1, 5));
  CHECK(parse_quadext("-sqrt(5)") == QuadExt(0, -1, 5));
  CHECK(parse_quadext("1+-1/2*sqrt(5)") == QuadExt(1, Rational(-1, 2), 5));
  CHECK(parse_quadext("1-1/2*sqrt(5)") == QuadExt(1, Rational(-1, 2), 5));
  CHECK(parse_quadext("13/25") == QuadExt(Rational(13, 25)));
  CHECK(to_pretty(QuadExt(0, Rational(1, 4), 5)) == "1/4*sqrt(5)");
  CHECK(to_pretty(QuadExt(1, Rational(-1, 2), 5)) == "1-1/2*sqrt(5)");
  CHECK_THROWS_AS(parse_quadext("1+sqrt(x)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quadext(""), std::invalid_argument);
}

TEST_CASE("phases live in the upper half plane plus the negative axis") {
  CHECK_FALSE(Phase::of({QuadExt(0), QuadExt(0)}).has_value());
  CHECK_FALSE(Phase::of({QuadExt(1), QuadExt(0)}).has_value());
  CHECK_FALSE(Phase::of({QuadExt(0), QuadExt(-1)}).has_value());
  CHECK(Phase::from({QuadExt(-3), QuadExt(0)}).is_one());
  CHECK_THROWS_AS(Phase::from({QuadExt(2), QuadExt(0)}), std::domain_error);

  auto ph = [](long long re, long long im) { return Phase::from({QuadExt(re), QuadExt(im)}); };
  CHECK(phase_cmp(ph(-1, 0), ph(0, 1)) == Ordering::Greater);
  CHECK(phase_cmp(ph(1, 1), ph(-1, 1)) == Ordering::Less);
  CHECK(phase_cmp(ph(2, 3), ph(4, 6)) == Ordering::Equal);
  CHECK(phase_cmp(ph(-1, 0), ph(-5, 0)) == Ordering::Equal);
  CHECK(phase_cmp(ph(0, 1), ph(0, 7)) == Ordering::Equal);
}

TEST_CASE("phase comparison matches atan2 away from ties") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> coord(-30, 30), positive(1, 30);
  for (int i = 0; i < 1000; ++i) {
    ComplexQE z1{QuadExt(coord(rng)), QuadExt(positive(rng))};
    ComplexQE z2{QuadExt(coord(rng)), QuadExt(positive(rng))};
    long double a1 = std::atan2(approx(z1.im), approx(z1.re));
    long double a2 = std::atan2(approx(z2.im), approx(z2.re));
    Ordering got = phase_cmp(Phase::from(z1), Phase::from(z2));
    if (std::abs(a1 - a2) < 1e-12L)
      CHECK(got == Ordering::Equal);
    else
      CHECK(got == (a1 > a2 ? Ordering::Greater : Ordering::Less));
  }
}

TEST_CASE("phase comparison with irrational parts") {
  QuadExt m0 = QuadExt::sqrt_of(Rational(5, 16));
  ComplexQE z_j{QuadExt(0), QuadExt(2) * m0};
  ComplexQE z_e1{QuadExt(2) * m0 * m0 - QuadExt(Rational(5, 8)), m0};
  CHECK(phase_cmp(Phase::from(z_j), Phase::from(z_e1)) == Ordering::Equal);
  ComplexQE tilted{QuadExt(Rational(-1, 1000)), m0};
  CHECK(phase_cmp(Phase::from(tilted), Phase::from(z_j)) == Ordering::Greater);
}
