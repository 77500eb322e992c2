#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "k3lab/stability.hpp"

#include <map>
#include <random>

using namespace k3lab;

namespace {

const QuadExt kM0 = QuadExt::sqrt_of(Rational(5, 16));

RatVector axpy(RatVector y, const Rational& a, const RatVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

// <exp(x), v> with x = D + i m h, expanded as a complex Mukai pairing:
// exp(x) = (1, x, x.x/2), so the pairing is x.c - s - r (x.x)/2.
ComplexQE exp_product(const Scenario& sc, const QuadExt& m, const MukaiVector& v) {
  const Gram& g = sc.ambient;
  RatVector h = to_rational(sc.h);
  RatVector d = axpy(axpy(sc.b.vector(), Rational(1, 2), to_rational(sc.k)), Rational(1, 4), h);
  QuadExt xc_re = QuadExt(g.pair(d, v.c));
  QuadExt xc_im = m * QuadExt(g.pair(h, v.c));
  QuadExt xx_re = QuadExt(g.pair(d, d)) - m * m * QuadExt(g.pair(h, h));
  QuadExt xx_im = QuadExt(2) * m * QuadExt(g.pair(d, h));
  QuadExt half_r = QuadExt(v.r / Rational(2));
  return {xc_re - QuadExt(v.s) - half_r * xx_re, xc_im - half_r * xx_im};
}

MukaiVector ns_vector(const Scenario& sc, long long x, long long y, long long z) {
  auto g = lemma_ns_generators(sc.pic, sc.b);
  return Rational(x) * g[0] + Rational(y) * g[1] + Rational(z) * g[2];
}

Scenario scenario_with_k(long long k) {
  IntVector kv(22);
  kv[0] = k;
  kv[1] = k;
  return with_k(build_default_scenario(), kv);
}

}  // namespace

TEST_CASE("charges of the catalogue") {
  ChargeParams p(build_default_scenario());
  CHECK(p.shift_sq == Rational(7, 8));
  CHECK(p.mu == Rational(1));
  for (const QuadExt& m : {QuadExt(Rational(13, 25)), QuadExt(1), kM0, QuadExt(Rational(7, 3))}) {
    ComplexQE zj = central_charge(p, m, vector_j(p.sc));
    CHECK(zj.re.is_zero());
    CHECK(zj.im == QuadExt(2) * m);
    ComplexQE z1 = central_charge(p, m, vector_e(1, p.sc));
    CHECK(z1.re == QuadExt(2) * m * m - QuadExt(Rational(5, 8)));
    CHECK(z1.re == QuadExt(Rational(1, 4)) * (QuadExt(-2) + QuadExt(8) * m * m - QuadExt(Rational(1, 2))));
    CHECK(z1.im == m);
    ComplexQE z0 = central_charge(p, m, vector_e(0, p.sc));
    CHECK(z0.re == z1.re);
    CHECK(z0.im == -m);
  }
  ComplexQE point = central_charge(p, QuadExt(3), MukaiVector{Rational(), RatVector(22), Rational(1)});
  CHECK(point.re == QuadExt(-1));
  CHECK(point.im.is_zero());
  CHECK(central_charge(p, kM0, vector_e(1, p.sc)).re.is_zero());
  CHECK_THROWS_AS(central_charge(p, QuadExt(0), vector_j(p.sc)), std::domain_error);
  CHECK_THROWS_AS(central_charge(p, QuadExt(-1), vector_j(p.sc)), std::domain_error);
}

TEST_CASE("expanded charge agrees with the exp product") {
  std::mt19937 rng(59);
  std::uniform_int_distribution<int> coef(-5, 5), num(1, 40), den(1, 12), kk(-3, 3);
  for (int t = 0; t < 150; ++t) {
    ChargeParams p(scenario_with_k(kk(rng)));
    MukaiVector v = ns_vector(p.sc, coef(rng), coef(rng), coef(rng));
    QuadExt m = t % 3 == 0 ? kM0 * QuadExt(Rational(num(rng), den(rng))) : QuadExt(Rational(num(rng), den(rng)));
    CHECK(central_charge(p, m, v) == exp_product(p.sc, m, v));
  }
}

TEST_CASE("central charge is additive") {
  std::mt19937 rng(61);
  std::uniform_int_distribution<int> coef(-6, 6), num(1, 30);
  ChargeParams p(build_default_scenario());
  for (int t = 0; t < 100; ++t) {
    MukaiVector v = ns_vector(p.sc, coef(rng), coef(rng), coef(rng));
    MukaiVector w = ns_vector(p.sc, coef(rng), coef(rng), coef(rng));
    QuadExt m(Rational(num(rng), 7));
    CHECK(central_charge(p, m, v + w) == central_charge(p, m, v) + central_charge(p, m, w));
    CHECK(integral_im_ratio(p, v + w, m) == integral_im_ratio(p, v, m) + integral_im_ratio(p, w, m));
  }
}

TEST_CASE("charges frozen from an independent symbolic computation") {
  ChargeParams p(build_default_scenario());
  struct Row {
    long long x, y, z;
    Rational m, re, im;
  };
  const Row rows[] = {
      {1, 0, 1, Rational(13, 25), Rational(0), Rational(26, 25)},
      {1, 1, 2, Rational(7, 3), Rational(739, 72), Rational(7, 3)},
      {0, 1, 1, Rational(7, 3), Rational(739, 72), Rational(-7, 3)},
      {2, -1, 3, Rational(13, 25), Rational(-9579, 5000), Rational(13, 5)},
      {2, -1, 3, Rational(7, 3), Rational(-883, 72), Rational(35, 3)},
  };
  for (const auto& r : rows) {
    ComplexQE z = central_charge(p, QuadExt(r.m), ns_vector(p.sc, r.x, r.y, r.z));
    CHECK(z.re == QuadExt(r.re));
    CHECK(z.im == QuadExt(r.im));
  }
}

TEST_CASE("integral Im ratio") {
  ChargeParams p(build_default_scenario());
  CHECK(integral_im_ratio(p, vector_j(p.sc), QuadExt(1)) == 2);
  CHECK(integral_im_ratio(p, vector_e(1, p.sc), kM0) == 1);
  CHECK(integral_im_ratio(p, MukaiVector{Rational(), RatVector(22), Rational(1)}, QuadExt(5)) == 0);
  for (const auto& g : lemma_ns_generators(p.sc.pic, p.sc.b)) CHECK_NOTHROW(integral_im_ratio(p, g, QuadExt(1)));
  // (0, B, 0) is not twisted-integral: its ratio is B.h = 1/2.
  CHECK_THROWS_AS(integral_im_ratio(p, MukaiVector{Rational(), p.sc.b.vector(), Rational()}, QuadExt(1)),
                  std::domain_error);
}

TEST_CASE("the wall between J and E1") {
  ChargeParams p(build_default_scenario());
  auto w = wall_between(p, vector_j(p.sc), vector_e(1, p.sc));
  REQUIRE(w.roots.size() == 1);
  CHECK(w.roots[0] == kM0);
  CHECK(w.roots[0].radicand() == 5);
  CHECK(to_string(w.roots[0]) == "0+1/4*sqrt(5)");
  REQUIRE(w.chambers.size() == 2);
  CHECK(w.chambers[0].order == Ordering::Less);
  CHECK(w.at_root[0] == Ordering::Equal);
  CHECK(w.chambers[1].order == Ordering::Greater);
  CHECK(qe_sign(w.chambers[0].sample) > 0);
  CHECK(qe_sign(kM0 - w.chambers[0].sample) > 0);
  CHECK(qe_sign(w.chambers[1].sample - kM0) > 0);

  auto shifted = wall_between(p, vector_j(p.sc), -vector_e(0, p.sc));
  CHECK(shifted.roots == std::vector<QuadExt>{kM0});
  CHECK(wall_between(p, vector_j(p.sc), MukaiVector{Rational(), RatVector(22), Rational(1)}).roots.empty());
  CHECK_THROWS_WITH_AS(wall_between(p, vector_j(p.sc), vector_j(p.sc)), "proportional classes", std::invalid_argument);
  CHECK_THROWS_AS(wall_between(p, vector_j(p.sc), Rational(-3) * vector_j(p.sc)), std::invalid_argument);
}

TEST_CASE("walls frozen from an independent symbolic computation") {
  ChargeParams p(build_default_scenario());
  struct Row {
    std::array<long long, 3> v, w;
    std::vector<std::string> roots;
  };
  const Row rows[] = {
      {{1, 0, 1}, {1, 1, 2}, {"0+1/4*sqrt(5)"}},
      {{1, 0, 1}, {0, -1, -1}, {"0+1/4*sqrt(5)"}},
      {{1, 1, 0}, {0, 1, 3}, {"0+1/4*sqrt(5)"}},
      {{2, 1, 0}, {1, 1, -1}, {}},
      {{0, 1, 0}, {1, 0, 0}, {}},
      {{-2, -2, -2}, {-2, -1, -1}, {"1/4"}},
      {{-2, -2, -2}, {-2, -1, 1}, {"3/4"}},
      {{-2, -2, -2}, {-2, -1, 2}, {"0+1/4*sqrt(13)"}},
      {{-2, -2, -2}, {-2, 1, 2}, {"0+1/12*sqrt(21)"}},
      {{-2, -1, -2}, {-1, 2, 1}, {"0+3/20*sqrt(5)"}},
      {{-2, -1, -2}, {-2, 1, 1}, {"0+1/4*sqrt(6)"}},
  };
  for (const auto& r : rows) {
    auto w = wall_between(p, ns_vector(p.sc, r.v[0], r.v[1], r.v[2]), ns_vector(p.sc, r.w[0], r.w[1], r.w[2]));
    std::vector<std::string> got;
    for (const auto& x : w.roots) got.push_back(to_string(x));
    CHECK(got == r.roots);
  }
}

TEST_CASE("every root aligns the charges exactly") {
  std::mt19937 rng(67);
  std::uniform_int_distribution<int> coef(-4, 4);
  ChargeParams p(build_default_scenario());
  int with_roots = 0;
  for (int t = 0; t < 300; ++t) {
    MukaiVector v = ns_vector(p.sc, coef(rng), coef(rng), coef(rng));
    MukaiVector w = ns_vector(p.sc, coef(rng), coef(rng), coef(rng));
    WallReport r;
    try {
      r = wall_between(p, v, w);
    } catch (const std::invalid_argument&) {
      continue;
    }
    for (std::size_t i = 0; i + 1 < r.roots.size(); ++i) CHECK(qe_sign(r.roots[i + 1] - r.roots[i]) > 0);
    for (const auto& m : r.roots) {
      CHECK(qe_sign(m) > 0);
      ComplexQE zv = central_charge(p, m, v), zw = central_charge(p, m, w);
      CHECK((zv.re * zw.im - zw.re * zv.im).is_zero());
      ++with_roots;
    }
    CHECK(r.chambers.size() == r.roots.size() + 1);
    for (const auto& ch : r.chambers) {
      ComplexQE zv = central_charge(p, ch.sample, v), zw = central_charge(p, ch.sample, w);
      CHECK_FALSE((zv.re * zw.im - zw.re * zv.im).is_zero());
    }
  }
  CHECK(with_roots > 10);
}

TEST_CASE("closed form of the real part") {
  ChargeParams p(build_default_scenario());
  MukaiVector e1 = vector_e(1, p.sc);
  auto half = re_closed_form(p, e1, kM0);
  CHECK(half.value == QuadExt(Rational(1, 8)));
  CHECK(half.discrepancy == QuadExt(Rational(-1, 8)));
  auto half1 = re_closed_form(p, e1, QuadExt(1));
  CHECK(half1.value == QuadExt(Rational(3, 2)));
  CHECK(half1.discrepancy == QuadExt(Rational(-1, 8)));
  auto quarter = re_closed_form(p, e1, kM0, ShiftConvention::Quarter);
  CHECK(quarter.value.is_zero());
  CHECK(quarter.discrepancy.is_zero());

  CHECK(closed_form_re(2, 2, 0, QuadExt(Rational(1, 2))).is_zero());
  CHECK(qe_sign(closed_form_re(2, 2, 0, QuadExt(Rational(51, 100)))) > 0);
  CHECK_THROWS_AS(re_closed_form(p, vector_j(p.sc), QuadExt(1)), std::domain_error);

  // Direct Re of (2, 2B+K, s0) at m = 1.
  CHECK(central_charge(p, QuadExt(1), vector_e(0, p.sc)).re == QuadExt(Rational(11, 8)));
}

TEST_CASE("with the Z shift the closed form is an identity") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> coef(-5, 5), num(1, 30);
  ChargeParams p(scenario_with_k(2));
  for (int t = 0; t < 100; ++t) {
    MukaiVector v = ns_vector(p.sc, coef(rng), coef(rng), coef(rng));
    if (v.r.is_zero()) continue;
    QuadExt m(Rational(num(rng), 9));
    CHECK(re_closed_form(p, v, m, ShiftConvention::Quarter).discrepancy.is_zero());
    // With h/2 in the shift the gap is a constant multiple of r, independent of m.
    CHECK(re_closed_form(p, v, m).discrepancy == re_closed_form(p, v, QuadExt(1)).discrepancy);
  }
}

TEST_CASE("epsilon bound") {
  ChargeParams p(build_default_scenario());
  auto b = epsilon_bound(p);
  CHECK(b.epsilon == QuadExt(Rational(1, 2)));
  CHECK(b.min_rank == 2);
  CHECK(b.m0 == kM0);
  CHECK(b.below_wall);
  CHECK(qe_sign(b.m0 - b.epsilon) == 1);
}

TEST_CASE("Hodge index certificate") {
  Scenario sc = build_default_scenario();
  auto r = hodge_index_check(sc);
  CHECK(r.pass);
  CHECK(r.complement.rank() == 0);

  Scenario u = sc;
  IntVector e1(22), e2(22);
  e1[0] = 1;
  e2[1] = 1;
  u.pic = sublattice_span(u.ambient, {e1, e2});
  auto ru = hodge_index_check(u);
  CHECK(ru.pass);
  CHECK(ru.complement == Gram::from_rows({{-2}}));
  CHECK(ru.complement_signature == Signature{0, 1, 0});

  Lattice neg = Lattice::full(rank_one(-2));
  auto rn = hodge_index_check(neg, IntVector{1});
  CHECK_FALSE(rn.pass);
  CHECK(rn.message.find("positive square") != std::string::npos);

  Gram two_pos = direct_sum(rank_one(2), rank_one(2));
  auto rp = hodge_index_check(Lattice::full(two_pos), IntVector{1, 0});
  CHECK_FALSE(rp.pass);
}

TEST_CASE("destabilizer scan agrees with a direct enumeration") {
  ChargeParams p(build_default_scenario());
  auto gens = lemma_ns_generators(p.sc.pic, p.sc.b);
  MukaiVector v = vector_j(p.sc);
  const int bound = 3;
  for (const QuadExt& m : {QuadExt(Rational(13, 25)), kM0, QuadExt(1), QuadExt(Rational(9, 5))}) {
    Phase pv = Phase::from(central_charge(p, m, v));
    std::map<IntVector, Ordering> want;
    for (int x = -bound; x <= bound; ++x)
      for (int y = -bound; y <= bound; ++y)
        for (int z = -bound; z <= bound; ++z) {
          MukaiVector w = Rational(x) * gens[0] + Rational(y) * gens[1] + Rational(z) * gens[2];
          if (mukai_pairing(w, w, p.sc.ambient) < Rational(-2)) continue;
          ComplexQE zw = central_charge(p, m, w);
          if (qe_sign(zw.im) <= 0 || qe_sign(zw.im - QuadExt(2) * m) >= 0) continue;
          Ordering o = phase_cmp(Phase::from(zw), pv);
          if (o != Ordering::Less) want[IntVector{x, y, z}] = o;
        }
    std::map<IntVector, Ordering> got;
    for (const auto& c : destabilizer_scan(p, v, m, bound)) got[c.coeffs] = c.relation;
    CHECK(got == want);
  }
}

TEST_CASE("destabilizer scan at the reference parameters") {
  ChargeParams p(build_default_scenario());
  MukaiVector v = vector_j(p.sc);
  Lattice picb = twisted_picard(p.sc.ambient, p.sc.transcendental(), p.sc.b);

  auto at1 = destabilizer_scan(p, v, QuadExt(1), kDefaultScanBound);
  bool e0_shift = false;
  for (const auto& c : at1) {
    CHECK(c.self_pairing >= Rational(-2));
    CHECK(lattice_contains(picb, c.w));
    CHECK(c.relation != Ordering::Less);
    e0_shift = e0_shift || (c.w == -vector_e(0, p.sc) && c.relation == Ordering::Greater);
  }
  CHECK(e0_shift);

  std::vector<IntVector> equal;
  for (const auto& c : destabilizer_scan(p, v, kM0, kDefaultScanBound))
    if (c.relation == Ordering::Equal) equal.push_back(c.coeffs);
  CHECK(equal == std::vector<IntVector>{{0, -1, -1}, {1, 1, 2}});

  // Below the wall v(E1) itself has strictly larger phase than J.
  bool e1_strict = false;
  for (const auto& c : destabilizer_scan(p, v, QuadExt(Rational(13, 25)), kDefaultScanBound))
    e1_strict = e1_strict || (c.w == vector_e(1, p.sc) && c.relation == Ordering::Greater);
  CHECK(e1_strict);

  CHECK_THROWS_AS(destabilizer_scan(p, MukaiVector::zero(22), QuadExt(1), 2), std::domain_error);
  CHECK_THROWS_AS(destabilizer_scan(p, v, QuadExt(1), 0), std::invalid_argument);
}

TEST_CASE("scan output does not depend on the number of workers") {
  ChargeParams p(build_default_scenario());
  auto serial = destabilizer_scan(p, vector_j(p.sc), QuadExt(1), kDefaultScanBound, 1);
  for (int jobs : {2, 3, 5, 8}) {
    auto parallel = destabilizer_scan(p, vector_j(p.sc), QuadExt(1), kDefaultScanBound, jobs);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(parallel[i].coeffs == serial[i].coeffs);
      CHECK(parallel[i].charge == serial[i].charge);
      CHECK(parallel[i].relation == serial[i].relation);
    }
  }
}

TEST_CASE("catalogue phases across the wall") {
  ChargeParams p(build_default_scenario());
  auto above = hn_report(p, QuadExt(1));
  CHECK(above.verdict == ChamberVerdict::Destabilized);
  CHECK(above.e0_shift_vs_j == Ordering::Greater);
  CHECK(above.j_vs_e1 == Ordering::Greater);
  CHECK(above.narrative.find("numeric surrogate") != std::string::npos);

  auto at = hn_report(p, kM0);
  CHECK(at.verdict == ChamberVerdict::Semistable);
  CHECK(at.e0_shift_vs_j == Ordering::Equal);
  CHECK(at.j_vs_e1 == Ordering::Equal);

  auto below = hn_report(p, QuadExt(Rational(13, 25)));
  CHECK(below.verdict == ChamberVerdict::StableAgainstCatalogue);
  CHECK(below.e0_shift_vs_j == Ordering::Less);
  CHECK(below.j_vs_e1 == Ordering::Less);

  CHECK_THROWS_AS(hn_report(p, QuadExt(Rational(1, 2))), std::domain_error);
  CHECK_THROWS_AS(hn_report(p, QuadExt(Rational(1, 3))), std::domain_error);

  // The ordering flips exactly at m0, for every K = k h.
  for (long long k : {-2, 0, 3}) {
    ChargeParams q(scenario_with_k(k));
    CHECK(hn_report(q, kM0 + QuadExt(Rational(1, 1000))).verdict == ChamberVerdict::Destabilized);
    CHECK(hn_report(q, kM0 - QuadExt(Rational(1, 1000))).verdict == ChamberVerdict::StableAgainstCatalogue);
    CHECK(hn_report(q, kM0).verdict == ChamberVerdict::Semistable);
  }
}
