#pragma once

// Integral lattices: Gram matrices, sublattices of a fixed ambient, primitive
// closure, orthogonal complements, discriminants, inertia, and a three-valued
// representability test for binary forms.

#include "k3lab/matrix.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace k3lab {

/// Symmetric integer matrix of a bilinear form.
class Gram {
 public:
  Gram() = default;
  /// Throws std::invalid_argument unless square and symmetric.
  explicit Gram(IntMatrix entries);
  static Gram from_rows(const std::vector<IntVector>& rows);

  std::size_t rank() const { return entries_.rows(); }
  const IntMatrix& matrix() const { return entries_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  Integer pair(const IntVector& x, const IntVector& y) const;
  Rational pair(const RatVector& x, const RatVector& y) const;
  /// Row vector x^T G.
  IntVector covector(const IntVector& x) const;

  bool is_even() const;

  friend bool operator==(const Gram&, const Gram&) = default;

 private:
  IntMatrix entries_;
};

Gram hyperbolic_plane();
/// Negated E8 Cartan matrix, nodes in Bourbaki order 1..8: the chain
/// 1-3-4-5-6-7-8 with node 2 attached to node 4.
Gram e8_negative();
Gram rank_one(const Integer& k);
/// "U", "E8neg" or "rank1(k)". Throws std::invalid_argument otherwise.
Gram standard_lattice(std::string_view name);
Gram direct_sum(const Gram& g1, const Gram& g2);
/// U^3 + E8(-1)^2, rank 22.
Gram k3_lattice();

/// A sublattice of Z^n spanned by linearly independent integer vectors,
/// with the form of its ambient Gram.
class Lattice {
 public:
  Lattice() = default;
  /// Throws std::invalid_argument for wrong dimensions or dependent vectors.
  Lattice(Gram ambient, std::vector<IntVector> basis);
  static Lattice full(const Gram& ambient);

  const Gram& ambient() const { return ambient_; }
  const std::vector<IntVector>& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }
  std::size_t dimension() const { return ambient_.rank(); }

  /// Induced Gram basis^T * G * basis.
  Gram gram() const;
  /// Integral coordinates of v in the basis, if v is a lattice vector.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
  bool contains(const Lattice& other) const;
  /// Vector of coordinates c expressed back in ambient coordinates.
  IntVector combine(const IntVector& coeffs) const;

 private:
  Gram ambient_;
  std::vector<IntVector> basis_;
};

/// Same ambient rank and mutual containment.
bool same_lattice(const Lattice& x, const Lattice& y);

/// Lattice spanned by the generators, basis in Hermite normal form.
Lattice sublattice_span(const Gram& ambient, const std::vector<IntVector>& generators);

/// [super : sub] for sub contained in super with equal rank; throws
/// std::invalid_argument otherwise.
Integer index_in(const Lattice& sub, const Lattice& super);

struct Saturation {
  Lattice closure;
  Integer index;
};
/// Primitive closure (Q-span intersected with Z^n) and the index of l in it.
Saturation saturation(const Lattice& l);

/// {x : <x, v_i> = 0 for all i}; an empty list gives the whole ambient.
Lattice orthogonal_complement(const Gram& ambient, const std::vector<IntVector>& vectors);

/// Signed determinant of the induced Gram matrix.
Integer discriminant(const Lattice& l);
Integer discriminant(const Gram& g);

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};
Signature signature(const Gram& g);
std::string to_string(const Signature& s);
/// "[[a,b],[b,c]]"
std::string to_string(const Gram& g);

struct Representation {
  enum class Verdict { Yes, NoByCongruence, NoByExhaustion, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::array<Integer, 2> witness{};  // meaningful for Yes
  Integer modulus = 0;               // meaningful for NoByCongruence
};

/// Decides whether the binary form a x^2 + 2 b xy + c y^2 takes the value
/// `target`. Witnesses are searched in |x|, |y| <= search_bound; a "No"
/// verdict is only returned with a certificate (a modulus at which the target
/// is not a value, or a complete enumeration for a definite form).
Representation represents(const Gram& g, const Integer& target, const Integer& search_bound);
std::string to_string(const Representation& r);

/// Largest modulus tried by the congruence filter of `represents`.
inline constexpr int kMaxCongruenceModulus = 64;

}  // namespace k3lab
