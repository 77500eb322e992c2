// k3lab: command-line front end for the lattice, Mukai-vector and stability
// computations. Exit codes: 0 ok / all checks pass, 1 a check failed, 2 bad input.

#include "k3lab/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace k3lab;
using nlohmann::json;

namespace {

struct Common {
  std::string scenario_path;
  bool json_out = false;
};

Scenario load(const Common& c) { return c.scenario_path.empty() ? build_default_scenario() : load_scenario(c.scenario_path); }

std::string trim(std::string s) {
  auto a = s.find_first_not_of(" \t");
  auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

/// Catalogue names (J, E0, E1, E0[1], -E0, -E1, -J) or explicit components:
/// "(r,[c1,...,cn],s)", "(r,0,s)" for c = 0, or all n+2 flat coordinates.
MukaiVector parse_vector(std::string spec, const Scenario& sc) {
  spec = trim(spec);
  const std::size_t n = sc.h2_rank();
  if (spec == "J") return vector_j(sc);
  if (spec == "E0") return vector_e(0, sc);
  if (spec == "E1") return vector_e(1, sc);
  if (spec == "E0[1]" || spec == "-E0") return -vector_e(0, sc);
  if (spec == "-E1") return -vector_e(1, sc);
  if (spec == "-J") return -vector_j(sc);

  auto bad = [&](const std::string& why) { return std::invalid_argument("bad vector '" + spec + "': " + why); };
  if (spec.size() < 2 || spec.front() != '(' || spec.back() != ')') throw bad("expected a catalogue name or (r,c,s)");
  std::string body = spec.substr(1, spec.size() - 2);
  try {
    auto lb = body.find('[');
    if (lb != std::string::npos) {
      auto rb = body.find(']', lb);
      if (rb == std::string::npos) throw bad("unbalanced brackets");
      auto head = split(body.substr(0, lb), ',');
      auto tail = split(body.substr(rb + 1), ',');
      if (head.size() != 2 || !head[1].empty() || tail.size() != 2 || !tail[0].empty()) throw bad("expected (r,[c...],s)");
      RatVector c;
      for (const auto& x : split(body.substr(lb + 1, rb - lb - 1), ',')) c.push_back(parse_rational(x));
      if (c.size() != n) throw bad("c needs " + std::to_string(n) + " components");
      return {parse_rational(head[0]), std::move(c), parse_rational(tail[1])};
    }
    auto parts = split(body, ',');
    if (parts.size() == 3 && parse_rational(parts[1]).is_zero())
      return {parse_rational(parts[0]), RatVector(n), parse_rational(parts[2])};
    if (parts.size() == n + 2) {
      RatVector c;
      for (std::size_t i = 1; i <= n; ++i) c.push_back(parse_rational(parts[i]));
      return {parse_rational(parts.front()), std::move(c), parse_rational(parts.back())};
    }
  } catch (const std::invalid_argument& e) {
    throw bad(e.what());
  }
  throw bad("expected (r,[c...],s), (r,0,s) or " + std::to_string(n + 2) + " coordinates");
}

QuadExt parse_m(const std::string& text, const ChargeParams& p) {
  if (trim(text) == "m0") {
    auto w = wall_between(p, vector_j(p.sc), vector_e(1, p.sc));
    if (w.roots.size() != 1) throw std::domain_error("no unique wall between J and E1");
    return w.roots.front();
  }
  return parse_quadext(text);
}

json charge_json(const ComplexQE& z) { return {{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }

std::string order_text(const std::optional<Ordering>& o) { return o ? to_string(*o) : "undefined"; }

int cmd_verify(const Common& c, int jobs, int bound) {
  Scenario sc = load(c);
  auto entries = run_battery(sc, {bound, jobs});
  if (c.json_out)
    std::cout << report_json(entries).dump(2) << "\n";
  else
    std::cout << report_text(entries);
  return exit_code(entries);
}

int cmd_walls(const Common& c, const std::string& vs, const std::string& ws) {
  ChargeParams p(load(c));
  auto r = wall_between(p, parse_vector(vs, p.sc), parse_vector(ws, p.sc));
  if (c.json_out) {
    json roots = json::array(), chambers = json::array(), at = json::array();
    for (const auto& x : r.roots) roots.push_back(to_string(x));
    for (const auto& o : r.at_root) at.push_back(order_text(o));
    for (const auto& ch : r.chambers)
      chambers.push_back({{"lower", to_string(ch.lower)},
                          {"upper", ch.upper ? json(to_string(*ch.upper)) : json(nullptr)},
                          {"sample", to_string(ch.sample)},
                          {"order", order_text(ch.order)}});
    std::cout << json{{"v", to_string(r.v)}, {"w", to_string(r.w)}, {"walls", roots}, {"at_wall", at},
                      {"chambers", chambers}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::string list;
  for (std::size_t i = 0; i < r.roots.size(); ++i) list += (i ? ", " : "") + to_pretty(r.roots[i]);
  std::cout << "walls: [" << list << "]\n";
  for (std::size_t i = 0; i < r.roots.size(); ++i)
    std::cout << "  at " << to_pretty(r.roots[i]) << ": phase(v) vs phase(w) = " << order_text(r.at_root[i]) << "\n";
  for (const auto& ch : r.chambers)
    std::cout << "  (" << to_pretty(ch.lower) << ", " << (ch.upper ? to_pretty(*ch.upper) : "inf")
              << "): phase(v) vs phase(w) = " << order_text(ch.order) << "\n";
  return 0;
}

int cmd_scan(const Common& c, const std::string& vs, const std::string& ms, int bound, int jobs) {
  ChargeParams p(load(c));
  MukaiVector v = parse_vector(vs, p.sc);
  QuadExt m = parse_m(ms, p);
  auto found = destabilizer_scan(p, v, m, bound, jobs);
  if (c.json_out) {
    json arr = json::array();
    for (const auto& f : found) {
      json coeffs = json::array();
      for (const auto& x : f.coeffs) coeffs.push_back(x.convert_to<long long>());
      arr.push_back({{"coeffs", coeffs},
                     {"w", to_string(f.w)},
                     {"charge", charge_json(f.charge)},
                     {"im_ratio", f.im_ratio.convert_to<long long>()},
                     {"self_pairing", to_string(f.self_pairing)},
                     {"relation", to_string(f.relation)}});
    }
    std::cout << json{{"v", to_string(v)}, {"m", to_string(m)}, {"max_coeff", bound}, {"candidates", arr}}.dump(2)
              << "\n";
    return 0;
  }
  std::cout << "scan at m = " << to_pretty(m) << ", box " << bound << ": " << found.size()
            << " candidates (numeric surrogate: charges only)\n";
  for (const auto& f : found) {
    std::cout << "  (";
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) std::cout << (i ? "," : "") << f.coeffs[i];
    std::cout << ") " << to_string(f.relation) << " Z = " << to_string(f.charge) << " <w,w> = " << to_string(f.self_pairing)
              << "\n";
  }
  return 0;
}

int cmd_picard(const Common& c) {
  Scenario sc = load(c);
  auto gens = lemma_ns_generators(sc.pic, sc.b);
  const std::size_t k = gens.size();
  IntMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = to_integer(mukai_pairing(gens[i], gens[j], sc.ambient));
  Gram gram(std::move(g));
  Integer disc = discriminant(gram);
  if (disc < 0) disc = -disc;
  Lattice picb = twisted_picard(sc.ambient, sc.transcendental(), sc.b);
  bool same = same_lattice(picb, generator_span_lattice(sc.pic, sc.b));
  if (c.json_out) {
    json gs = json::array();
    for (const auto& v : gens) gs.push_back(to_string(v));
    std::cout << json{{"generators", gs}, {"gram", to_string(gram)}, {"abs_disc", disc.str()},
                      {"equals_twisted_picard", same}}
                     .dump(2)
              << "\n";
    return 0;
  }
  for (const auto& v : gens) std::cout << "generator " << to_string(v) << "\n";
  std::cout << "Gram " << to_string(gram) << "\n|disc| " << disc << "\n"
            << "equals Pic(S,B): " << (same ? "yes" : "no") << "\n";
  return 0;
}

int cmd_chi(const Common& c, const std::string& preset, const std::string& twists) {
  if (preset.empty() == twists.empty()) throw std::invalid_argument("give exactly one of --preset and --twists");
  TwistProfile t;
  if (!preset.empty()) {
    t = twist_preset(preset);
  } else {
    for (const auto& x : split(twists, ',')) t.twists.push_back(to_integer(parse_rational(x)));
  }
  Integer chi = chi_p2(t);
  if (c.json_out)
    std::cout << json{{"rank", t.rank()}, {"chi", chi.str()}}.dump(2) << "\n";
  else
    std::cout << chi << "\n";
  return 0;
}

int cmd_represent(const Common& c, const std::string& gram, long long target, long long bound) {
  auto entries = split(gram, ',');
  if (entries.size() != 4) throw std::invalid_argument("--gram takes a,b,b,c");
  IntVector e;
  for (const auto& x : entries) e.push_back(to_integer(parse_rational(x)));
  auto r = represents(Gram::from_rows({{e[0], e[1]}, {e[2], e[3]}}), target, bound);
  if (c.json_out)
    std::cout << json{{"gram", gram}, {"target", target}, {"verdict", to_string(r)}}.dump(2) << "\n";
  else
    std::cout << to_string(r) << "\n";
  return 0;
}

int cmd_hn(const Common& c, const std::string& ms) {
  ChargeParams p(load(c));
  auto r = hn_report(p, parse_m(ms, p));
  if (c.json_out) {
    std::cout << json{{"m", to_string(r.m)},
                      {"z_e0_shift", charge_json(r.z_e0_shift)},
                      {"z_j", charge_json(r.z_j)},
                      {"z_e1", charge_json(r.z_e1)},
                      {"e0_shift_vs_j", to_string(r.e0_shift_vs_j)},
                      {"j_vs_e1", to_string(r.j_vs_e1)},
                      {"verdict", to_string(r.verdict)},
                      {"narrative", r.narrative}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout << "m = " << to_pretty(r.m) << "\nZ(E0[1]) = " << to_string(r.z_e0_shift) << "\nZ(J) = " << to_string(r.z_j)
            << "\nZ(E1) = " << to_string(r.z_e1) << "\nphase(E0[1]) vs phase(J): " << to_string(r.e0_shift_vs_j)
            << "\nphase(J) vs phase(E1): " << to_string(r.j_vs_e1) << "\n"
            << to_string(r.verdict) << ": " << r.narrative << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k3lab: exact lattice and stability computations for a twisted degree-2 K3 surface"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", common.scenario_path, "Scenario JSON (default: built-in scenario)");
    sub->add_flag("--json", common.json_out, "Machine-readable output");
  };

  int jobs = 1;
  int bound = kDefaultScanBound;
  std::string v_spec = "J", w_spec, m_spec, preset, twists, gram;
  long long target = 0, search = 50;

  auto* verify = app.add_subcommand("verify", "Run the full check battery");
  add_common(verify);
  verify->add_option("--jobs", jobs, "Scan worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--max-coeff", bound, "Scan box bound")->check(CLI::PositiveNumber);

  auto* walls = app.add_subcommand("walls", "Walls between two classes");
  add_common(walls);
  walls->add_option("--v", v_spec, "First class")->required();
  walls->add_option("--w", w_spec, "Second class")->required();

  auto* scan = app.add_subcommand("scan", "Destabilizer candidates for a class");
  add_common(scan);
  scan->add_option("--v", v_spec, "Class to destabilize (default J)");
  scan->add_option("--m", m_spec, "Parameter m as a+b*sqrt(n), or m0")->required();
  scan->add_option("--max-coeff", bound, "Box bound")->check(CLI::PositiveNumber);
  scan->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* picard = app.add_subcommand("picard", "Twisted Picard lattice");
  add_common(picard);

  auto* chi = app.add_subcommand("chi", "Euler characteristic of a split bundle on the plane");
  add_common(chi);
  chi->add_option("--preset", preset, "B0 or B1");
  chi->add_option("--twists", twists, "Comma-separated twists a_i");

  auto* represent = app.add_subcommand("represent", "Does a binary form take a value");
  add_common(represent);
  represent->add_option("--gram", gram, "a,b,b,c")->required();
  represent->add_option("--target", target, "Value")->required();
  represent->add_option("--bound", search, "Witness search box")->check(CLI::PositiveNumber);

  auto* hn = app.add_subcommand("hn", "Phase comparison of E0[1], J, E1");
  add_common(hn);
  hn->add_option("--m", m_spec, "Parameter m as a+b*sqrt(n), or m0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(common, jobs, bound);
    if (*walls) return cmd_walls(common, v_spec, w_spec);
    if (*scan) return cmd_scan(common, v_spec, m_spec, bound, jobs);
    if (*picard) return cmd_picard(common);
    if (*chi) return cmd_chi(common, preset, twists);
    if (*represent) return cmd_represent(common, gram, target, search);
    if (*hn) return cmd_hn(common, m_spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
