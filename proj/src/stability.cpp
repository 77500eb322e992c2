#include "k3lab/stability.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace k3lab {

namespace {

RatVector combine(const RatVector& x, const RatVector& y, const Rational& k) {
  RatVector out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * y[i];
  return out;
}

void require_positive(const QuadExt& m) {
  if (qe_sign(m) <= 0) throw std::domain_error("m must be positive, got " + to_pretty(m));
}

bool proportional(const MukaiVector& v, const MukaiVector& w) {
  RatVector a{v.r}, b{w.r};
  a.insert(a.end(), v.c.begin(), v.c.end());
  b.insert(b.end(), w.c.begin(), w.c.end());
  a.push_back(v.s);
  b.push_back(w.s);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

std::optional<Ordering> compare_charges(const ComplexQE& zv, const ComplexQE& zw) {
  auto pv = Phase::of(zv);
  auto pw = Phase::of(zw);
  if (!pv || !pw) return std::nullopt;
  return phase_cmp(*pv, *pw);
}

}  // namespace

ChargeParams::ChargeParams(Scenario scenario) : sc(std::move(scenario)) {
  sc.validate();
  RatVector h = to_rational(sc.h);
  shift = combine(combine(sc.b.vector(), to_rational(sc.k), Rational(1, 2)), h, Rational(1, 4));
  shift_sq = sc.ambient.pair(shift, shift);
  mu = sc.ambient.pair(shift, h);
}

ChargeCoefficients charge_coefficients(const ChargeParams& p, const MukaiVector& v) {
  const Gram& g = p.sc.ambient;
  RatVector h = to_rational(p.sc.h);
  Rational alpha = g.pair(p.shift, v.c) - v.s - v.r * p.shift_sq / Rational(2);
  Rational beta = g.pair(combine(v.c, p.shift, -v.r), h);
  return {std::move(alpha), v.r, std::move(beta)};
}

ComplexQE central_charge(const ChargeParams& p, const QuadExt& m, const MukaiVector& v) {
  require_positive(m);
  auto k = charge_coefficients(p, v);
  return {QuadExt(k.alpha) + QuadExt(k.r) * m * m, QuadExt(k.beta) * m};
}

Integer integral_im_ratio(const ChargeParams& p, const MukaiVector& v, const QuadExt& m) {
  require_positive(m);
  Rational beta = charge_coefficients(p, v).beta;
  if (!beta.is_integer())
    throw std::domain_error("Im Z/m = " + to_string(beta) + " is not an integer; class is not in Pic(S,B)");
  return beta.num();
}

// ------------------------------------------------------------------- walls

WallReport wall_between(const ChargeParams& p, const MukaiVector& v, const MukaiVector& w) {
  if (proportional(v, w)) throw std::invalid_argument("proportional classes");
  auto cv = charge_coefficients(p, v);
  auto cw = charge_coefficients(p, w);
  // Re(v) Im(w) - Re(w) Im(v) = m (A m^2 + C)
  Rational a = cv.r * cw.beta - cw.r * cv.beta;
  Rational c = cv.alpha * cw.beta - cw.alpha * cv.beta;
  if (a.is_zero() && c.is_zero()) throw std::invalid_argument("proportional classes: charges aligned for every m");

  WallReport report{v, w, {}, {}, {}};
  if (!a.is_zero()) {
    Rational sq = -c / a;
    if (sq.sign() > 0) report.roots.push_back(QuadExt::sqrt_of(sq));
  }

  auto ordering_at = [&](const QuadExt& m) {
    return compare_charges(central_charge(p, m, v), central_charge(p, m, w));
  };
  for (const auto& root : report.roots) report.at_root.push_back(ordering_at(root));

  QuadExt lower(0);
  for (std::size_t i = 0; i <= report.roots.size(); ++i) {
    Chamber ch;
    ch.lower = lower;
    if (i < report.roots.size()) ch.upper = report.roots[i];
    // A rational sample strictly inside (lower, upper).
    Rational t(1);
    if (ch.upper) {
      while (qe_sign(*ch.upper - QuadExt(t)) <= 0) t /= Rational(2);
      // Roots are isolated, so the midpoint search from above cannot hit `lower` for one root.
      while (qe_sign(QuadExt(t) - lower) <= 0) t = (t + Rational(1)) / Rational(2);
    } else {
      while (qe_sign(QuadExt(t) - lower) <= 0) t *= Rational(2);
    }
    ch.sample = QuadExt(t);
    ch.order = ordering_at(ch.sample);
    report.chambers.push_back(std::move(ch));
    if (i < report.roots.size()) lower = report.roots[i];
  }
  return report;
}

// -------------------------------------------------------------- closed form

QuadExt closed_form_re(const Rational& chi, const Rational& r, const Rational& ff, const QuadExt& m) {
  if (r.is_zero()) throw std::domain_error("closed form needs r != 0");
  QuadExt inner = QuadExt(-chi - ff) + QuadExt(Rational(2) * r * r) * m * m;
  return QuadExt(Rational(1) / (Rational(2) * r)) * inner;
}

ClosedFormRe re_closed_form(const ChargeParams& p, const MukaiVector& v, const QuadExt& m,
                            ShiftConvention convention) {
  if (v.r.is_zero()) throw std::domain_error("closed form needs r != 0");
  const Gram& g = p.sc.ambient;
  Rational x = convention == ShiftConvention::Half ? Rational(1, 2) : Rational(1, 4);
  RatVector base = combine(combine(p.sc.b.vector(), to_rational(p.sc.k), Rational(1, 2)), to_rational(p.sc.h), x);
  RatVector f = combine(v.c, base, -v.r);
  Rational chi = -mukai_pairing(v, v, g);
  QuadExt value = closed_form_re(chi, v.r, g.pair(f, f), m);
  QuadExt direct = central_charge(p, m, v).re;
  return {value, direct - value};
}

// ----------------------------------------------------------------- epsilon

EpsilonBound epsilon_bound(const ChargeParams& p) {
  Lattice pic_b = twisted_picard(p.sc.ambient, p.sc.transcendental(), p.sc.b);
  Integer min_rank = 0;
  for (const auto& b : pic_b.basis()) min_rank = gcd(min_rank, b.front());
  if (min_rank == 0) throw std::domain_error("Pic(S,B) has no class of positive rank");
  auto wall = wall_between(p, vector_j(p.sc), vector_e(1, p.sc));
  if (wall.roots.size() != 1) throw std::domain_error("expected a single wall between v(J) and v(E1)");
  QuadExt eps(Rational(Integer(1), min_rank));
  QuadExt m0 = wall.roots.front();
  bool below = qe_sign(m0 - eps) > 0;
  return {std::move(eps), std::move(min_rank), std::move(m0), below};
}

// ------------------------------------------------------------ Hodge index

HodgeIndexReport hodge_index_check(const Lattice& pic, const IntVector& h) {
  HodgeIndexReport out;
  Gram g = pic.gram();
  out.pic_signature = signature(g);
  auto coords = pic.coordinates(h);
  if (!coords) {
    out.message = "h is not in Pic(S)";
    return out;
  }
  IntMatrix functional = IntMatrix::from_rows({g.covector(*coords)}, pic.rank());
  auto kernel = integer_kernel(functional);
  IntMatrix restricted(kernel.size(), kernel.size());
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = 0; j < kernel.size(); ++j) restricted(i, j) = g.pair(kernel[i], kernel[j]);
  out.complement = Gram(std::move(restricted));
  out.complement_signature = signature(out.complement);

  const std::size_t rho = pic.rank();
  if (pic.ambient().pair(h, h) <= 0) {
    out.message = "no class of positive square: h.h = " + pic.ambient().pair(h, h).str();
  } else if (out.pic_signature != Signature{1, rho - 1, 0}) {
    out.message = "Pic(S) signature " + to_string(out.pic_signature) + " is not hyperbolic";
  } else if (out.complement_signature != Signature{0, rho - 1, 0}) {
    out.message = "h^perp in Pic(S) is not negative definite: " + to_string(out.complement_signature);
  } else {
    out.pass = true;
    out.message = rho == 1 ? "h^perp in Pic(S) is trivial" : "h^perp in Pic(S) is negative definite";
  }
  return out;
}

HodgeIndexReport hodge_index_check(const Scenario& sc) { return hodge_index_check(sc.pic, sc.h); }

// -------------------------------------------------------------------- scan

std::vector<ScanCandidate> destabilizer_scan(const ChargeParams& p, const MukaiVector& v, const QuadExt& m,
                                             int coeff_bound, int jobs) {
  require_positive(m);
  if (coeff_bound <= 0) throw std::invalid_argument("coefficient bound must be positive");
  jobs = std::max(jobs, 1);

  const ComplexQE zv = central_charge(p, m, v);
  if (zv.is_zero()) throw std::domain_error("v has zero charge");
  const Phase phase_v = Phase::from(zv);
  const Integer ratio_v = integral_im_ratio(p, v, m);

  const auto gens = lemma_ns_generators(p.sc.pic, p.sc.b);
  const std::size_t k = gens.size();
  std::vector<ChargeCoefficients> coeff;
  for (const auto& g : gens) coeff.push_back(charge_coefficients(p, g));
  std::vector<std::vector<Rational>> pairing(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) pairing[i][j] = mukai_pairing(gens[i], gens[j], p.sc.ambient);
  const QuadExt m2 = m * m;
  const int width = 2 * coeff_bound + 1;

  auto worker = [&](int slot, std::vector<ScanCandidate>& found) {
    std::vector<int> c(k, -coeff_bound);
    for (int first = slot; first < width; first += jobs) {
      c.assign(k, -coeff_bound);
      c[0] = first - coeff_bound;
      while (true) {
        Rational beta, alpha, r, norm;
        for (std::size_t i = 0; i < k; ++i) {
          if (c[i] == 0) continue;
          Rational ci(c[i]);
          beta += ci * coeff[i].beta;
          alpha += ci * coeff[i].alpha;
          r += ci * coeff[i].r;
          for (std::size_t j = 0; j < k; ++j)
            if (c[j] != 0) norm += ci * Rational(c[j]) * pairing[i][j];
        }
        Integer ratio = to_integer(beta);
        if (ratio > 0 && ratio < ratio_v && norm >= Rational(-2)) {
          ComplexQE zw{QuadExt(alpha) + QuadExt(r) * m2, QuadExt(beta) * m};
          Ordering rel = phase_cmp(Phase::from(zw), phase_v);
          if (rel != Ordering::Less) {
            MukaiVector w = MukaiVector::zero(p.sc.h2_rank());
            IntVector coeffs(k);
            for (std::size_t i = 0; i < k; ++i) {
              coeffs[i] = c[i];
              if (c[i] != 0) w = w + Rational(c[i]) * gens[i];
            }
            found.push_back({std::move(coeffs), std::move(w), std::move(zw), std::move(ratio), norm, rel});
          }
        }
        // Odometer over coordinates 1..k-1.
        std::size_t pos = k;
        while (pos > 1) {
          --pos;
          if (c[pos] < coeff_bound) {
            ++c[pos];
            break;
          }
          c[pos] = -coeff_bound;
          if (pos == 1) pos = 0;
        }
        if (pos == 0 || k == 1) break;
      }
    }
  };

  std::vector<std::vector<ScanCandidate>> parts(static_cast<std::size_t>(jobs));
  if (jobs == 1) {
    worker(0, parts[0]);
  } else {
    std::vector<std::jthread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker, t, std::ref(parts[static_cast<std::size_t>(t)]));
  }
  std::vector<ScanCandidate> out;
  for (auto& part : parts)
    for (auto& cand : part) out.push_back(std::move(cand));
  std::sort(out.begin(), out.end(), [](const ScanCandidate& x, const ScanCandidate& y) { return x.coeffs < y.coeffs; });
  return out;
}

// ---------------------------------------------------------------------- HN

std::string to_string(ChamberVerdict v) {
  switch (v) {
    case ChamberVerdict::Destabilized: return "destabilized";
    case ChamberVerdict::Semistable: return "semistable";
    case ChamberVerdict::StableAgainstCatalogue: return "stable_against_catalogue";
    case ChamberVerdict::Unclassified: return "unclassified";
  }
  return "?";
}

HnReport hn_report(const ChargeParams& p, const QuadExt& m) {
  auto eps = epsilon_bound(p);
  if (qe_sign(m - eps.epsilon) <= 0)
    throw std::domain_error("m = " + to_pretty(m) + " must exceed epsilon = " + to_pretty(eps.epsilon));
  HnReport out;
  out.m = m;
  out.z_e0_shift = -central_charge(p, m, vector_e(0, p.sc));
  out.z_j = central_charge(p, m, vector_j(p.sc));
  out.z_e1 = central_charge(p, m, vector_e(1, p.sc));
  Phase e0s = Phase::from(out.z_e0_shift);
  Phase j = Phase::from(out.z_j);
  Phase e1 = Phase::from(out.z_e1);
  out.e0_shift_vs_j = phase_cmp(e0s, j);
  out.j_vs_e1 = phase_cmp(j, e1);

  constexpr const char* kCaveat = " (numeric surrogate: charges only, no categorical claim)";
  if (out.e0_shift_vs_j == Ordering::Greater && out.j_vs_e1 == Ordering::Greater) {
    out.verdict = ChamberVerdict::Destabilized;
    out.narrative = std::string("J_l strictly destabilized; HN factors [E0[1], E1] in decreasing phase") + kCaveat;
  } else if (out.e0_shift_vs_j == Ordering::Equal && out.j_vs_e1 == Ordering::Equal) {
    out.verdict = ChamberVerdict::Semistable;
    out.narrative = std::string("all phases equal 1/2; JH factors {E1, E0[1]}") + kCaveat;
  } else if (out.e0_shift_vs_j == Ordering::Less && out.j_vs_e1 == Ordering::Less) {
    out.verdict = ChamberVerdict::StableAgainstCatalogue;
    out.narrative = std::string("J_l stable against catalogue") + kCaveat;
  } else {
    out.verdict = ChamberVerdict::Unclassified;
    out.narrative = std::string("catalogue phases are not monotone") + kCaveat;
  }
  return out;
}

}  // namespace k3lab
