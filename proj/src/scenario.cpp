#include "k3lab/scenario.hpp"

#include <fstream>

namespace k3lab {

using nlohmann::json;

Lattice Scenario::transcendental() const { return orthogonal_complement(ambient, pic.basis()); }

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ScenarioError("invariant violated: " + what);
}

void require_length(const IntVector& v, std::size_t n, const std::string& name) {
  require(v.size() == n, name + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
}

RatVector add(RatVector x, const RatVector& y, const Rational& k = Rational(1)) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += k * y[i];
  return x;
}

}  // namespace

void Scenario::validate() const {
  const std::size_t n = h2_rank();
  require_length(h, n, "h");
  require_length(k, n, "K");
  require_length(lambda, n, "lambda");
  require(b.vector().size() == n, "B has length " + std::to_string(b.vector().size()) + ", expected " + std::to_string(n));
  require(pic.dimension() == n, "Pic(S) generators have the wrong length");

  require(ambient.pair(h, h) == 2, "h.h != 2");
  require(b.order() <= 2, "B-field order " + b.order().str() + " not in {1,2}");
  if (nontrivial_brauer()) require(ambient.pair(b.vector(), to_rational(h)) == Rational(1, 2), "B.h != 1/2");
  require(ambient.pair(lambda, lambda) == 2, "lambda.lambda != 2");
  require(ambient.pair(lambda, h) == 0, "lambda.h != 0");
  require(pic.contains(h), "h not in Pic(S)");
  require(pic.contains(k), "K not in Pic(S)");
}

Scenario build_default_scenario() {
  using namespace default_coords;
  Scenario sc;
  sc.blocks = {"U", "U", "U", "E8neg", "E8neg"};
  sc.ambient = k3_lattice();
  const std::size_t n = sc.ambient.rank();
  sc.h = IntVector(n);
  sc.h[kE1] = 1;
  sc.h[kE2] = 1;
  sc.lambda = IntVector(n);
  sc.lambda[kF1] = 1;
  sc.lambda[kF2] = 1;
  IntVector b_num(n);
  b_num[kE2] = 1;
  b_num[kF1] = 1;
  b_num[kF2] = 1;
  sc.b = BField::from_fraction(b_num, 2);
  sc.k = IntVector(n);
  sc.pic = sublattice_span(sc.ambient, {sc.h});
  sc.validate();
  return sc;
}

Scenario with_k(Scenario sc, IntVector k) {
  sc.k = std::move(k);
  sc.validate();
  return sc;
}

// --------------------------------------------------------------------- JSON

namespace {

IntVector int_vector(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ScenarioError("malformed scenario: missing \"" + key + "\"");
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ScenarioError("malformed scenario: \"" + key + "\" must be an array");
  IntVector out;
  out.reserve(arr.size());
  for (const auto& x : arr) {
    if (!x.is_number_integer()) throw ScenarioError("malformed scenario: \"" + key + "\" must hold integers");
    out.emplace_back(x.get<long long>());
  }
  return out;
}

json to_json_ints(const IntVector& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(x.convert_to<long long>());
  return arr;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ScenarioError("malformed scenario: expected a JSON object");
  Scenario sc;
  if (!j.contains("ambient") || !j.at("ambient").is_array())
    throw ScenarioError("malformed scenario: \"ambient\" must be an array of block names");
  bool first = true;
  for (const auto& name : j.at("ambient")) {
    if (!name.is_string()) throw ScenarioError("malformed scenario: block names must be strings");
    Gram block;
    try {
      block = standard_lattice(name.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }
    sc.ambient = first ? block : direct_sum(sc.ambient, block);
    sc.blocks.push_back(name.get<std::string>());
    first = false;
  }
  if (first) throw ScenarioError("malformed scenario: empty ambient");

  sc.h = int_vector(j, "h");
  sc.k = int_vector(j, "K");
  sc.lambda = int_vector(j, "lambda");
  IntVector b_num = int_vector(j, "B_num");
  if (!j.contains("B_den") || !j.at("B_den").is_number_integer())
    throw ScenarioError("malformed scenario: \"B_den\" must be an integer");
  long long b_den = j.at("B_den").get<long long>();
  if (b_den <= 0) throw ScenarioError("invariant violated: B_den must be positive");
  sc.b = BField::from_fraction(b_num, b_den);

  if (!j.contains("pic_generators") || !j.at("pic_generators").is_array() || j.at("pic_generators").empty())
    throw ScenarioError("malformed scenario: \"pic_generators\" must be a non-empty array");
  std::vector<IntVector> gens;
  for (const auto& g : j.at("pic_generators")) gens.push_back(int_vector(json{{"g", g}}, "g"));
  for (const auto& g : gens) require_length(g, sc.ambient.rank(), "pic generator");
  try {
    sc.pic = sublattice_span(sc.ambient, gens);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("invariant violated: Pic(S) generators: ") + e.what());
  }
  sc.validate();
  return sc;
}

json scenario_to_json(const Scenario& sc) {
  json j;
  j["ambient"] = sc.blocks;
  j["h"] = to_json_ints(sc.h);
  IntVector num = sc.b.scaled();
  j["B_num"] = to_json_ints(num);
  j["B_den"] = sc.b.order().convert_to<long long>();
  j["K"] = to_json_ints(sc.k);
  json gens = json::array();
  for (const auto& g : sc.pic.basis()) gens.push_back(to_json_ints(g));
  j["pic_generators"] = gens;
  j["lambda"] = to_json_ints(sc.lambda);
  return j;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  }
  return scenario_from_json(j);
}

// ------------------------------------------------------------ Mukai vectors

Rational spherical_s(const Integer& r, const RatVector& c, const Gram& h2) {
  if (r == 0) throw std::domain_error("spherical_s needs r != 0");
  return (h2.pair(c, c) + Rational(2)) / Rational(2 * r);
}

MukaiVector vector_e(int j, const Scenario& sc) {
  if (j != 0 && j != 1) throw std::invalid_argument("vector_e: j must be 0 or 1");
  RatVector c = add(add(to_rational(sc.k), to_rational(sc.h), Rational(j)), sc.b.vector(), Rational(2));
  Rational s = spherical_s(2, c, sc.ambient);
  MukaiVector v{Rational(2), std::move(c), std::move(s)};
  if (!v.is_integral()) throw std::domain_error("v(E_" + std::to_string(j) + ") is not integral: " + to_string(v));
  return v;
}

MukaiVector vector_j(const Scenario& sc) {
  Rational mu = slope_threshold(sc);
  if (!mu.is_integer()) throw std::domain_error("v(J_l) is not integral: mu = " + to_string(mu));
  return {Rational(), to_rational(sc.h), mu};
}

Rational slope(const MukaiVector& v, const Scenario& sc) {
  if (v.r.is_zero()) throw std::domain_error("slope of a rank-0 class is undefined");
  return sc.ambient.pair(v.c, to_rational(sc.h)) / v.r;
}

Rational slope_threshold(const Scenario& sc) {
  RatVector shift = add(add(sc.b.vector(), to_rational(sc.k), Rational(1, 2)), to_rational(sc.h), Rational(1, 4));
  return sc.ambient.pair(shift, to_rational(sc.h));
}

// -------------------------------------------------------------------- P^2

TwistProfile preset_b0() { return {{0, -1, -1, -1, -2, -2, -2, -3}}; }
TwistProfile preset_b1() { return {{0, 0, 0, -1, -1, -2, -2, -2}}; }

TwistProfile twist_preset(const std::string& name) {
  if (name == "B0") return preset_b0();
  if (name == "B1") return preset_b1();
  throw std::invalid_argument("unknown preset '" + name + "' (expected B0 or B1)");
}

Integer chi_p2(const TwistProfile& profile) {
  Integer total = 0;
  for (const auto& a : profile.twists) total += (a + 1) * (a + 2) / 2;
  return total;
}

}  // namespace k3lab
