#pragma once

// The concrete geometric setup: a degree-2 K3 surface S (double cover of the
// projective plane) with H^2(S,Z) = U^3 + E8(-1)^2, polarization h, B-field of
// order 2, the class K, and the Mukai vectors of E_0, E_1 and J_l derived from
// them. Also Euler characteristics of split bundles on the plane.

#include "k3lab/mukai.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace k3lab {

/// Raised for malformed scenario input; the message names the violated invariant.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::vector<std::string> blocks;  // e.g. {"U","U","U","E8neg","E8neg"}
  Gram ambient;                     // H^2(S,Z)
  IntVector h;                      // polarization f*h
  BField b;
  IntVector k;                      // the class K in Pic(S)
  Lattice pic;                      // Pic(S)
  IntVector lambda;

  std::size_t h2_rank() const { return ambient.rank(); }
  /// T(S) = Pic(S)^perp in H^2.
  Lattice transcendental() const;
  /// Throws ScenarioError naming the first violated invariant.
  void validate() const;
  /// True when the Brauer class is non-trivial (d = 2).
  bool nontrivial_brauer() const { return b.order() == 2; }
};

/// Coordinates of the default scenario: 0,1 = e1,e2 (first U); 2,3 = f1,f2
/// (second U); 4,5 = third U; 6..13 and 14..21 the two E8(-1) blocks.
namespace default_coords {
inline constexpr std::size_t kE1 = 0;
inline constexpr std::size_t kE2 = 1;
inline constexpr std::size_t kF1 = 2;
inline constexpr std::size_t kF2 = 3;
}  // namespace default_coords

/// h = e1+e2, lambda = f1+f2, B = (e2+lambda)/2, K = 0, Pic(S) = <h>.
Scenario build_default_scenario();

/// Same setup with K replaced (K must lie in Pic(S)).
Scenario with_k(Scenario sc, IntVector k);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& sc);
Scenario load_scenario(const std::string& path);

/// The s with <(r,c,s),(r,c,s)> = -2, i.e. s = (c.c + 2) / (2r).
Rational spherical_s(const Integer& r, const RatVector& c, const Gram& h2);

/// v(E_j) = (2, K + j h + 2B, s_j) with s_j forced by sphericity.
MukaiVector vector_e(int j, const Scenario& sc);
/// v(J_l) = (0, h, mu).
MukaiVector vector_j(const Scenario& sc);

/// mu(v) = c.h / r.
Rational slope(const MukaiVector& v, const Scenario& sc);
/// mu = (B + K/2 + h/4).h.
Rational slope_threshold(const Scenario& sc);

/// Twists a_i of a split bundle sum O(a_i h) on the plane.
struct TwistProfile {
  std::vector<Integer> twists;
  std::size_t rank() const { return twists.size(); }
};

/// O + O(-h)^3 + O(-2h)^3 + O(-3h).
TwistProfile preset_b0();
/// O^3 + O(-h)^2 + O(-2h)^3.
TwistProfile preset_b1();
/// "B0" or "B1"; throws std::invalid_argument otherwise.
TwistProfile twist_preset(const std::string& name);

/// Riemann-Roch on the plane: sum (a+1)(a+2)/2.
Integer chi_p2(const TwistProfile& profile);

}  // namespace k3lab
