#include "k3lab/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace k3lab {

namespace mp = boost::multiprecision;

Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer l = a / gcd(a, b) * b;
  return l < 0 ? Integer(-l) : l;
}

Integer floor_div(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("division by zero");
  Integer q = num / den;  // truncates toward zero
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

std::string to_string(const Integer& x) { return x.str(); }

// ---------------------------------------------------------------- Rational

Rational::Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::domain_error("division by zero");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Integer g = gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero");
  Integer n = num_ * o.den_;
  Integer d = den_ * o.num_;
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Integer lhs = a.num_ * b.den_;
  Integer rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Integer floor(const Rational& x) { return floor_div(x.num(), x.den()); }

Integer to_integer(const Rational& x) {
  if (!x.is_integer()) throw std::domain_error("not an integer: " + to_string(x));
  return x.num();
}

std::string to_string(const Rational& x) {
  if (x.is_integer()) return x.num().str();
  return x.num().str() + "/" + x.den().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << to_string(x); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  Integer value{std::string(digits)};
  return s.front() == '-' ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(text.substr(0, slash)), den);
}

// ----------------------------------------------------------------- QuadExt

namespace {

struct SquareSplit {
  Integer square_root;  // k with n = k^2 * rest
  Integer rest;         // square-free part
};

SquareSplit split_square(Integer n) {
  // n >= 0. Trial division, then a perfect-square test on what remains.
  constexpr unsigned long kTrialLimit = 100000;
  SquareSplit out{1, 1};
  if (n == 0) return {0, 0};
  for (unsigned long p = 2; p <= kTrialLimit && Integer(p) * p <= n; ++p) {
    unsigned exponent = 0;
    while (n % p == 0) {
      n /= p;
      ++exponent;
    }
    for (unsigned e = 0; e + 1 < exponent; e += 2) out.square_root *= p;
    if (exponent % 2 == 1) out.rest *= p;
  }
  if (n > 1) {
    Integer r = mp::sqrt(n);
    if (r * r == n) {
      out.square_root *= r;
    } else {
      Integer bound = Integer(kTrialLimit) * kTrialLimit * kTrialLimit;
      if (n >= bound) throw std::domain_error("radicand too large to certify square-free");
      out.rest *= n;
    }
  }
  return out;
}

const Integer& merged_radicand(const QuadExt& x, const QuadExt& y) {
  // A side with b = 0 is rational; its radicand is only context.
  if (x.radicand() == y.radicand()) return x.radicand();
  if (x.radicand() == 0 || (x.b().is_zero() && !y.b().is_zero())) return y.radicand();
  if (y.radicand() == 0 || y.b().is_zero()) return x.radicand();
  throw std::domain_error("radicand mismatch: sqrt(" + x.radicand().str() + ") vs sqrt(" +
                          y.radicand().str() + ")");
}

}  // namespace

QuadExt::QuadExt(Rational a, Rational b, Integer n) : a_(std::move(a)), b_(std::move(b)) {
  if (n < 0) throw std::domain_error("negative radicand");
  SquareSplit split = split_square(n);
  if (split.rest == 0) {
    b_ = Rational();
    n_ = 0;
    return;
  }
  b_ *= Rational(split.square_root);
  if (split.rest == 1) {
    a_ += b_;
    b_ = Rational();
    n_ = 0;
    return;
  }
  // A zero b keeps the radicand as context for later mixed arithmetic.
  n_ = split.rest;
}

QuadExt QuadExt::sqrt_of(const Rational& q) {
  if (q.sign() < 0) throw std::domain_error("square root of a negative rational");
  // sqrt(p/r) = sqrt(p*r)/r
  return QuadExt(Rational(), Rational(Integer(1), q.den()), q.num() * q.den());
}

QuadExt QuadExt::operator-() const {
  QuadExt r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadExt QuadExt::conjugate() const {
  QuadExt r = *this;
  r.b_ = -r.b_;
  return r;
}

Rational QuadExt::norm() const { return a_ * a_ - Rational(n_) * b_ * b_; }

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  QuadExt r;
  r.n_ = merged_radicand(x, y);
  r.a_ = x.a_ + y.a_;
  r.b_ = x.b_ + y.b_;
  return r;
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  QuadExt r;
  r.n_ = merged_radicand(x, y);
  r.a_ = x.a_ * y.a_ + Rational(r.n_) * x.b_ * y.b_;
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  return r;
}

QuadExt operator/(const QuadExt& x, const QuadExt& y) {
  if (y.is_zero()) throw std::domain_error("division by zero");
  merged_radicand(x, y);
  Rational n = y.norm();  // nonzero: n square-free and != 1
  QuadExt num = x * y.conjugate();
  QuadExt r = num;
  r.a_ = num.a_ / n;
  r.b_ = num.b_ / n;
  return r;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.b_.is_zero() || x.n_ == y.n_;
}

int qe_sign(const QuadExt& x) {
  int sa = x.a().sign();
  int sb = x.b().sign();
  if (sb == 0 || x.radicand() == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and b^2 n wins.
  Rational a2 = x.a() * x.a();
  Rational b2n = x.b() * x.b() * Rational(x.radicand());
  if (a2 > b2n) return sa;
  if (a2 < b2n) return sb;
  return 0;
}

std::strong_ordering qe_compare(const QuadExt& x, const QuadExt& y) {
  int s = qe_sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const QuadExt& x) {
  if (x.radicand() == 0 || x.b().is_zero()) return to_string(x.a());
  return to_string(x.a()) + "+" + to_string(x.b()) + "*sqrt(" + x.radicand().str() + ")";
}

std::string to_pretty(const QuadExt& x) {
  if (x.radicand() == 0 || x.b().is_zero()) return to_string(x.a());
  std::string b_part = to_string(abs(x.b())) + "*sqrt(" + x.radicand().str() + ")";
  if (x.a().is_zero()) return (x.b().sign() < 0 ? "-" : "") + b_part;
  return to_string(x.a()) + (x.b().sign() < 0 ? "-" : "+") + b_part;
}

namespace {

// Parses "c*sqrt(n)", "sqrt(n)", "-sqrt(n)" or a bare rational.
QuadExt parse_term(std::string_view term) {
  term = trim(term);
  auto root = term.find("sqrt(");
  if (root == std::string_view::npos) return QuadExt(parse_rational(term));
  if (term.back() != ')') throw std::invalid_argument("malformed sqrt term '" + std::string(term) + "'");
  Integer n = parse_integer(term.substr(root + 5, term.size() - root - 6));
  std::string_view coeff = trim(term.substr(0, root));
  Rational b(1);
  if (!coeff.empty()) {
    if (coeff == "-") {
      b = Rational(-1);
    } else if (coeff == "+") {
      b = Rational(1);
    } else {
      if (coeff.back() != '*') throw std::invalid_argument("expected '*' before sqrt in '" + std::string(term) + "'");
      coeff.remove_suffix(1);
      b = parse_rational(coeff);
    }
  }
  return QuadExt(Rational(), b, n);
}

}  // namespace

QuadExt parse_quadext(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty scalar");
  // Split at a top-level '+' or '-' that is not the leading sign and not
  // directly after another operator ("1+-1/2*sqrt(5)").
  for (std::size_t i = 1; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '+' || c == '-') && text[i - 1] != '+' && text[i - 1] != '-' && text[i - 1] != '*' &&
        text[i - 1] != '/' && text[i - 1] != '(') {
      QuadExt lhs = parse_term(text.substr(0, i));
      std::string_view rest = text.substr(c == '+' ? i + 1 : i);
      QuadExt rhs = parse_term(rest);
      return lhs + rhs;
    }
  }
  return parse_term(text);
}

// --------------------------------------------------------- ComplexQE/Phase

std::string to_string(const ComplexQE& z) {
  return "(" + to_pretty(z.re) + ", " + to_pretty(z.im) + ")";
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

std::optional<Phase> Phase::of(const ComplexQE& z) {
  int si = qe_sign(z.im);
  if (si > 0 || (si == 0 && qe_sign(z.re) < 0)) return Phase(z);
  return std::nullopt;
}

Phase Phase::from(const ComplexQE& z) {
  auto p = of(z);
  if (!p) throw std::domain_error("charge " + to_string(z) + " is not in the upper half plane");
  return *p;
}

namespace {

// 0: Re > 0, 1: Re = 0, 2: Re < 0 with Im > 0, 3: negative real axis.
// Phases increase strictly from class to class.
int quadrant_class(const ComplexQE& z) {
  if (qe_sign(z.im) == 0) return 3;
  int sr = qe_sign(z.re);
  return sr > 0 ? 0 : (sr == 0 ? 1 : 2);
}

}  // namespace

Ordering phase_cmp(const Phase& z1, const Phase& z2) {
  const ComplexQE& u = z1.value();
  const ComplexQE& w = z2.value();
  int c1 = quadrant_class(u);
  int c2 = quadrant_class(w);
  if (c1 != c2) return c1 < c2 ? Ordering::Less : Ordering::Greater;
  if (c1 == 1 || c1 == 3) return Ordering::Equal;
  // Same open quadrant: arg(u) - arg(w) has the sign of Im(conj(w) * u).
  int s = qe_sign(u.im * w.re - u.re * w.im);
  if (s > 0) return Ordering::Greater;
  if (s < 0) return Ordering::Less;
  return Ordering::Equal;
}

}  // namespace k3lab
