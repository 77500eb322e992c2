#include "k3lab/mukai.hpp"

#include <stdexcept>

namespace k3lab {

MukaiVector MukaiVector::from_coordinates(const IntVector& flat) {
  if (flat.size() < 2) throw std::invalid_argument("Mukai coordinates need at least r and s");
  RatVector c(flat.begin() + 1, flat.end() - 1);
  return {Rational(flat.front()), std::move(c), Rational(flat.back())};
}

bool MukaiVector::is_integral() const { return r.is_integer() && s.is_integer() && k3lab::is_integral(c); }

IntVector MukaiVector::coordinates() const {
  IntVector flat;
  flat.reserve(c.size() + 2);
  flat.push_back(to_integer(r));
  for (const auto& x : c) flat.push_back(to_integer(x));
  flat.push_back(to_integer(s));
  return flat;
}

MukaiVector MukaiVector::operator-() const { return Rational(-1) * *this; }

MukaiVector operator+(const MukaiVector& v, const MukaiVector& w) {
  if (v.c.size() != w.c.size()) throw std::invalid_argument("Mukai vectors over different H^2");
  MukaiVector out = v;
  out.r += w.r;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += w.c[i];
  out.s += w.s;
  return out;
}

MukaiVector operator-(const MukaiVector& v, const MukaiVector& w) { return v + (-w); }

MukaiVector operator*(const Rational& k, const MukaiVector& v) {
  MukaiVector out = v;
  out.r *= k;
  for (auto& x : out.c) x *= k;
  out.s *= k;
  return out;
}

std::string to_string(const MukaiVector& v) {
  std::string out = "(" + to_string(v.r) + ", [";
  for (std::size_t i = 0; i < v.c.size(); ++i) {
    if (i) out += ",";
    out += to_string(v.c[i]);
  }
  return out + "], " + to_string(v.s) + ")";
}

// ------------------------------------------------------------------ BField

BField::BField(RatVector b) : b_(std::move(b)) {
  for (const auto& x : b_) d_ = lcm(d_, x.den());
}

BField BField::from_fraction(const IntVector& numerators, const Integer& denominator) {
  if (denominator <= 0) throw std::invalid_argument("B-field denominator must be positive");
  RatVector b;
  b.reserve(numerators.size());
  for (const auto& n : numerators) b.emplace_back(n, denominator);
  return BField(std::move(b));
}

IntVector BField::scaled() const {
  IntVector out;
  out.reserve(b_.size());
  for (const auto& x : b_) out.push_back(to_integer(x * Rational(d_)));
  return out;
}

// ------------------------------------------------------------------- Mukai

Gram mukai_gram(const Gram& h2) {
  const std::size_t n = h2.rank();
  IntMatrix m(n + 2, n + 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i + 1, j + 1) = h2(i, j);
  m(0, n + 1) = -1;
  m(n + 1, 0) = -1;
  return Gram(std::move(m));
}

Rational mukai_pairing(const MukaiVector& v, const MukaiVector& w, const Gram& h2) {
  if (v.c.size() != h2.rank() || w.c.size() != h2.rank())
    throw std::invalid_argument("Mukai vector does not match the H^2 lattice");
  return h2.pair(v.c, w.c) - v.r * w.s - w.r * v.s;
}

MukaiVector exp_class(const RatVector& d, const Gram& h2) {
  return {Rational(1), d, h2.pair(d, d) / Rational(2)};
}

MukaiVector twist_by(const MukaiVector& v, const RatVector& d, const Gram& h2) {
  if (d.size() != h2.rank() || v.c.size() != h2.rank()) throw std::invalid_argument("dimension mismatch");
  MukaiVector out = v;
  for (std::size_t i = 0; i < d.size(); ++i) out.c[i] += v.r * d[i];
  out.s += h2.pair(v.c, d) + v.r * h2.pair(d, d) / Rational(2);
  return out;
}

namespace {

// Basis (coordinates) of {a in Z^k : sum a_i values_i = 0 mod d}.
std::vector<IntVector> congruence_kernel(const IntVector& values, const Integer& d) {
  const std::size_t k = values.size();
  IntMatrix row(1, k + 1);
  for (std::size_t i = 0; i < k; ++i) row(0, i) = values[i];
  row(0, k) = d;
  std::vector<IntVector> projected;
  for (const auto& v : integer_kernel(row)) projected.emplace_back(v.begin(), v.end() - 1);
  return hermite_normal_form(std::move(projected));
}

Integer abs_det(const std::vector<IntVector>& square) {
  Integer d = determinant(IntMatrix::from_rows(square, square.size()));
  return d < 0 ? Integer(-d) : d;
}

IntVector pairings_with_scaled_b(const Lattice& ts, const BField& b) {
  if (b.vector().size() != ts.dimension()) throw std::invalid_argument("B-field does not match the H^2 lattice");
  IntVector db = b.scaled();
  IntVector values;
  values.reserve(ts.rank());
  for (const auto& x : ts.basis()) values.push_back(ts.ambient().pair(db, x));
  return values;
}

}  // namespace

TwistedTranscendental twisted_transcendental(const Lattice& ts, const BField& b) {
  if (ts.rank() == 0 || discriminant(ts) == 0) throw std::invalid_argument("degenerate TS");
  const Gram& h2 = ts.ambient();
  auto coords = congruence_kernel(pairings_with_scaled_b(ts, b), b.order());
  Integer index = abs_det(coords);

  std::vector<IntVector> basis;
  basis.reserve(coords.size());
  for (const auto& a : coords) {
    IntVector x = ts.combine(a);
    Rational bx = h2.pair(b.vector(), to_rational(x));
    IntVector flat(h2.rank() + 2);
    for (std::size_t i = 0; i < x.size(); ++i) flat[i + 1] = x[i];
    flat.back() = to_integer(bx);
    basis.push_back(std::move(flat));
  }
  return {Lattice(mukai_gram(h2), std::move(basis)), std::move(index)};
}

Lattice twisted_picard(const Gram& ambient_h2, const Lattice& ts, const BField& b) {
  if (ts.ambient() != ambient_h2) throw std::invalid_argument("TS is not a sublattice of the given H^2");
  auto t = twisted_transcendental(ts, b);
  return orthogonal_complement(mukai_gram(ambient_h2), t.lattice.basis());
}

std::vector<MukaiVector> lemma_ns_generators(const Lattice& pic, const BField& b) {
  const std::size_t n = pic.dimension();
  if (b.vector().size() != n) throw std::invalid_argument("B-field does not match the H^2 lattice");
  std::vector<MukaiVector> out;
  for (const auto& x : pic.basis()) out.push_back({Rational(), to_rational(x), Rational()});
  out.push_back({Rational(b.order()), to_rational(b.scaled()), Rational()});
  out.push_back({Rational(), RatVector(n), Rational(1)});
  return out;
}

Lattice generator_span_lattice(const Lattice& pic, const BField& b) {
  std::vector<IntVector> gens;
  for (const auto& v : lemma_ns_generators(pic, b)) gens.push_back(v.coordinates());
  return sublattice_span(mukai_gram(pic.ambient()), gens);
}

BrauerKernel brauer_kernel(const Lattice& ts, const BField& b) {
  if (b.order() > 2) throw std::invalid_argument("Brauer classes of order " + b.order().str() + " are not supported");
  if (b.order() == 1) return {ts, false, 1};
  auto coords = congruence_kernel(pairings_with_scaled_b(ts, b), b.order());
  Integer index = abs_det(coords);
  std::vector<IntVector> basis;
  basis.reserve(coords.size());
  for (const auto& a : coords) basis.push_back(ts.combine(a));
  return {Lattice(ts.ambient(), std::move(basis)), index != 1, std::move(index)};
}

bool lattice_contains(const Lattice& l, const MukaiVector& v) {
  if (!v.is_integral()) return false;
  return l.contains(v.coordinates());
}

}  // namespace k3lab
