#pragma once

// The Mukai lattice H* = H^0 + H^2 + H^4 over a chosen H^2 lattice, B-fields,
// exp-twists, and the twisted transcendental / twisted Picard lattices.
//
// Mukai vectors live in coordinates (r, c_1..c_n, s); the pairing is
//   <(r,c,s), (r',c',s')> = c.c' - r s' - r' s.

#include "k3lab/lattice.hpp"

#include <string>
#include <vector>

namespace k3lab {

struct MukaiVector {
  Rational r;
  RatVector c;
  Rational s;

  MukaiVector() = default;
  MukaiVector(Rational r_, RatVector c_, Rational s_) : r(std::move(r_)), c(std::move(c_)), s(std::move(s_)) {}
  /// From flat integer coordinates (r, c..., s).
  static MukaiVector from_coordinates(const IntVector& flat);
  static MukaiVector zero(std::size_t h2_rank) { return {Rational(), RatVector(h2_rank), Rational()}; }

  bool is_integral() const;
  /// Flat coordinates (r, c..., s); throws std::domain_error if not integral.
  IntVector coordinates() const;

  MukaiVector operator-() const;
  friend MukaiVector operator+(const MukaiVector& v, const MukaiVector& w);
  friend MukaiVector operator-(const MukaiVector& v, const MukaiVector& w);
  friend MukaiVector operator*(const Rational& k, const MukaiVector& v);
  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

std::string to_string(const MukaiVector& v);

/// A rational H^2 class whose order d is the least positive integer with
/// d*B integral.
class BField {
 public:
  BField() = default;
  explicit BField(RatVector b);
  /// numerators / denominator, as in the scenario file format.
  static BField from_fraction(const IntVector& numerators, const Integer& denominator);

  const RatVector& vector() const { return b_; }
  const Integer& order() const { return d_; }
  /// d * B as an integer vector.
  IntVector scaled() const;

 private:
  RatVector b_;
  Integer d_ = 1;
};

/// Gram matrix of H*(S,Z) in flat coordinates (r, c..., s).
Gram mukai_gram(const Gram& h2);

Rational mukai_pairing(const MukaiVector& v, const MukaiVector& w, const Gram& h2);

/// exp(D) = (1, D, D.D/2).
MukaiVector exp_class(const RatVector& d, const Gram& h2);
/// v * exp(D) = (r, c + rD, s + c.D + r D.D/2).
MukaiVector twist_by(const MukaiVector& v, const RatVector& d, const Gram& h2);

struct TwistedTranscendental {
  Lattice lattice;  // in H*(S,Z), flat coordinates
  Integer index;    // [T(S) : {x in T(S) : B.x integral}]
};

/// {(0, x, B.x) : x in TS, B.x integral}. TS must be nondegenerate.
TwistedTranscendental twisted_transcendental(const Lattice& ts, const BField& b);

/// Orthogonal complement of the twisted transcendental lattice in H*(S,Z).
Lattice twisted_picard(const Gram& ambient_h2, const Lattice& ts, const BField& b);

/// Pic(S) embedded as (0,x,0), followed by (d, dB, 0) and (0, 0, 1).
std::vector<MukaiVector> lemma_ns_generators(const Lattice& pic, const BField& b);

/// Lattice in H*(S,Z) spanned by lemma_ns_generators.
Lattice generator_span_lattice(const Lattice& pic, const BField& b);

struct BrauerKernel {
  Lattice kernel;    // in H^2 coordinates
  bool surjective;   // x -> (dB).x mod d hits a nonzero class
  Integer index;
};

/// Kernel of TS -> Z/dZ, x -> (dB).x mod d. Only d <= 2 is supported.
BrauerKernel brauer_kernel(const Lattice& ts, const BField& b);

/// Membership of an integral Mukai vector in a lattice of H*(S,Z).
bool lattice_contains(const Lattice& l, const MukaiVector& v);

}  // namespace k3lab
