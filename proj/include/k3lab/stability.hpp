#pragma once

// Central charges Z_m(v) = <exp(D + i m h), v> with D = K/2 + B + h/4, walls
// in the parameter m, and the charge-level surrogates used to discuss
// (semi)stability of the classes E_0[1], J_l and E_1.
//
// Every result here is a statement about charges only. Nothing asserts that a
// class is realised by an actual subobject.

#include "k3lab/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3lab {

struct ChargeParams {
  Scenario sc;
  RatVector shift;     // K/2 + B + h/4
  Rational shift_sq;   // shift.shift
  Rational mu;         // shift.h, equal to slope_threshold(sc)

  explicit ChargeParams(Scenario scenario);
};

/// Z_m(v) = (alpha + r m^2) + i (beta m), where
///   alpha = shift.c - s - r shift.shift / 2,   beta = (c - r shift).h.
struct ChargeCoefficients {
  Rational alpha;
  Rational r;
  Rational beta;
};
ChargeCoefficients charge_coefficients(const ChargeParams& p, const MukaiVector& v);

/// Throws std::domain_error unless m > 0.
ComplexQE central_charge(const ChargeParams& p, const QuadExt& m, const MukaiVector& v);

/// Im Z_m(v) / m; throws std::domain_error if it is not an integer.
Integer integral_im_ratio(const ChargeParams& p, const MukaiVector& v, const QuadExt& m);

struct Chamber {
  QuadExt lower;                 // 0 for the first chamber
  std::optional<QuadExt> upper;  // empty for the last (unbounded) chamber
  QuadExt sample;                // a rational point strictly inside
  /// phase(v) compared with phase(w); empty when a charge leaves the half plane.
  std::optional<Ordering> order;
};

struct WallReport {
  MukaiVector v;
  MukaiVector w;
  std::vector<QuadExt> roots;                   // ascending, all > 0
  std::vector<std::optional<Ordering>> at_root; // ordering exactly on each root
  std::vector<Chamber> chambers;                // roots.size() + 1 entries
};

/// All m > 0 where Z_m(v) and Z_m(w) are real-proportional. Throws
/// std::invalid_argument("proportional classes") when that holds for every m.
WallReport wall_between(const ChargeParams& p, const MukaiVector& v, const MukaiVector& w);

/// Coefficient of h in F := c - r(K/2 + x h + B).
enum class ShiftConvention {
  Half,     // x = 1/2
  Quarter,  // x = 1/4, the shift used by Z_m itself
};

struct ClosedFormRe {
  QuadExt value;        // (1/2r)(-chi + 2 r^2 m^2 - F.F), chi = -<v,v>
  QuadExt discrepancy;  // Re Z_m(v) - value
};
ClosedFormRe re_closed_form(const ChargeParams& p, const MukaiVector& v, const QuadExt& m,
                            ShiftConvention convention = ShiftConvention::Half);

/// (1/2r)(-chi + 2 r^2 m^2 - FF).
QuadExt closed_form_re(const Rational& chi, const Rational& r, const Rational& ff, const QuadExt& m);

struct EpsilonBound {
  QuadExt epsilon;     // 1 / min_rank
  Integer min_rank;    // least positive rank in Pic(S,B)
  QuadExt m0;          // the wall between v(J_l) and v(E_1)
  bool below_wall;     // epsilon < m0
};
/// Spherical classes of rank r >= min_rank have Re Z_m > 0 once
/// 2 r^2 m^2 > 2 (using F.F <= 0), so m > 1/min_rank suffices.
EpsilonBound epsilon_bound(const ChargeParams& p);

struct HodgeIndexReport {
  bool pass = false;
  Signature pic_signature;
  Gram complement;                // form on h^perp inside Pic(S), in its own basis
  Signature complement_signature;
  std::string message;
};
HodgeIndexReport hodge_index_check(const Lattice& pic, const IntVector& h);
HodgeIndexReport hodge_index_check(const Scenario& sc);

struct ScanCandidate {
  IntVector coeffs;  // in the twisted Picard generators
  MukaiVector w;
  ComplexQE charge;
  Integer im_ratio;
  Rational self_pairing;
  Ordering relation;  // phase(w) vs phase(v): Greater or Equal
};

/// Classes w = sum coeffs_i g_i (g_i the twisted Picard generators, |coeffs_i| <=
/// coeff_bound) with <w,w> >= -2, 0 < ratio(w) < ratio(v) and
/// phase(Z_m(w)) >= phase(Z_m(v)). Sorted by coefficients; the result does not
/// depend on `jobs`.
std::vector<ScanCandidate> destabilizer_scan(const ChargeParams& p, const MukaiVector& v, const QuadExt& m,
                                             int coeff_bound, int jobs = 1);

inline constexpr int kDefaultScanBound = 8;

enum class ChamberVerdict {
  Destabilized,             // phi(E0[1]) > phi(J) > phi(E1)
  Semistable,               // all three phases equal
  StableAgainstCatalogue,   // phi(E1) > phi(J) > phi(E0[1])
  Unclassified,
};
std::string to_string(ChamberVerdict v);

struct HnReport {
  QuadExt m;
  ComplexQE z_e0_shift;  // -Z(E0)
  ComplexQE z_j;
  ComplexQE z_e1;
  Ordering e0_shift_vs_j;
  Ordering j_vs_e1;
  ChamberVerdict verdict;
  std::string narrative;
};
/// Throws std::domain_error unless m > epsilon_bound(p).
HnReport hn_report(const ChargeParams& p, const QuadExt& m);

}  // namespace k3lab
