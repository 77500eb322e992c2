#pragma once

// Exact scalars: arbitrary-precision rationals, the real quadratic fields
// Q(sqrt n), complex values with components in Q(sqrt n), and phases in the
// closed upper half plane. Nothing in here ever touches floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace k3lab {

using Integer = boost::multiprecision::cpp_int;

Integer gcd(Integer a, Integer b);
Integer lcm(const Integer& a, const Integer& b);
// Floor division; den must be nonzero.
Integer floor_div(const Integer& num, const Integer& den);
std::string to_string(const Integer& x);

/// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design of arithmetic
  Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Rational(Integer n, Integer d);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct raw_tag {};
  Rational(Integer n, Integer d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}
  void normalize();

  Integer num_;
  Integer den_;
};

Rational abs(const Rational& x);
Integer floor(const Rational& x);
// Integer part; throws std::domain_error when x is not an integer.
Integer to_integer(const Rational& x);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& x);
/// Accepts "p", "-p", "p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::ostream& operator<<(std::ostream& os, const Rational& x);

/// a + b*sqrt(n) with n square-free and non-negative; n = 0 forces b = 0.
/// Binary operations require equal radicands unless one side has b = 0.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT
  QuadExt(long long a) : a_(a) {}            // NOLINT
  /// Canonicalizes: square factors of n are pulled into b, n = 1 folds into a.
  QuadExt(Rational a, Rational b, Integer n);

  /// Exact square root of a non-negative rational, as (k/den)*sqrt(n').
  static QuadExt sqrt_of(const Rational& q);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& radicand() const { return n_; }

  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadExt operator-() const;
  QuadExt conjugate() const;
  Rational norm() const;  // a^2 - n b^2

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y);
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

  friend bool operator==(const QuadExt& x, const QuadExt& y);

 private:
  Rational a_;
  Rational b_;
  Integer n_ = 0;
};

/// Exact sign of a + b*sqrt(n).
int qe_sign(const QuadExt& x);
std::strong_ordering qe_compare(const QuadExt& x, const QuadExt& y);

/// Canonical text "a+b*sqrt(n)" (both parts present when b != 0),
/// e.g. "0+1/4*sqrt(5)". Rationals print as "p/q".
std::string to_string(const QuadExt& x);
/// Short text: drops zero parts, e.g. "1/4*sqrt(5)", "1-1/2*sqrt(5)".
std::string to_pretty(const QuadExt& x);
/// Parses canonical or short forms; also "sqrt(n)" and "b*sqrt(n)".
QuadExt parse_quadext(std::string_view text);

struct ComplexQE {
  QuadExt re;
  QuadExt im;

  friend ComplexQE operator+(const ComplexQE& x, const ComplexQE& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend ComplexQE operator-(const ComplexQE& x, const ComplexQE& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend ComplexQE operator*(const ComplexQE& x, const ComplexQE& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  ComplexQE operator-() const { return {-re, -im}; }
  friend bool operator==(const ComplexQE&, const ComplexQE&) = default;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

std::string to_string(const ComplexQE& z);

enum class Ordering { Less, Equal, Greater };
std::string to_string(Ordering o);

/// A nonzero complex value in {Im > 0} u {Im = 0, Re < 0}, standing for its
/// phase in (0, 1]. Only constructible through the checked factories.
class Phase {
 public:
  static std::optional<Phase> of(const ComplexQE& z);
  /// Throws std::domain_error outside the half plane.
  static Phase from(const ComplexQE& z);

  const ComplexQE& value() const { return z_; }
  bool is_one() const { return qe_sign(z_.im) == 0; }

 private:
  explicit Phase(ComplexQE z) : z_(std::move(z)) {}
  ComplexQE z_;
};

/// Orders arg(z1) against arg(z2) without computing either angle.
Ordering phase_cmp(const Phase& z1, const Phase& z2);

}  // namespace k3lab
