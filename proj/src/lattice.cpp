#include "k3lab/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace k3lab {

namespace mp = boost::multiprecision;

// -------------------------------------------------------------------- Gram

Gram::Gram(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("Gram matrix must be square");
  for (std::size_t i = 0; i < entries_.rows(); ++i)
    for (std::size_t j = i + 1; j < entries_.cols(); ++j)
      if (entries_(i, j) != entries_(j, i)) throw std::invalid_argument("Gram matrix must be symmetric");
}

Gram Gram::from_rows(const std::vector<IntVector>& rows) {
  return Gram(IntMatrix::from_rows(rows, rows.size()));
}

Integer Gram::pair(const IntVector& x, const IntVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw std::invalid_argument("vector dimension mismatch");
  return dot(covector(x), y);
}

Rational Gram::pair(const RatVector& x, const RatVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw std::invalid_argument("vector dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (entries_(i, j) == 0 || y[j].is_zero()) continue;
      s += x[i] * Rational(entries_(i, j)) * y[j];
    }
  }
  return s;
}

IntVector Gram::covector(const IntVector& x) const {
  IntVector out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) out[j] += x[i] * entries_(i, j);
  }
  return out;
}

bool Gram::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (entries_(i, i) % 2 != 0) return false;
  return true;
}

Gram hyperbolic_plane() { return Gram::from_rows({{0, 1}, {1, 0}}); }

Gram e8_negative() {
  // Edges of the E8 Dynkin diagram in Bourbaki numbering (1-based).
  constexpr std::array<std::pair<int, int>, 7> kEdges{
      {{1, 3}, {3, 4}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}}};
  IntMatrix m(8, 8);
  for (std::size_t i = 0; i < 8; ++i) m(i, i) = -2;
  for (auto [a, b] : kEdges) {
    m(a - 1, b - 1) = 1;
    m(b - 1, a - 1) = 1;
  }
  return Gram(std::move(m));
}

Gram rank_one(const Integer& k) {
  IntMatrix m(1, 1);
  m(0, 0) = k;
  return Gram(std::move(m));
}

Gram standard_lattice(std::string_view name) {
  if (name == "U") return hyperbolic_plane();
  if (name == "E8neg") return e8_negative();
  if (name.starts_with("rank1(") && name.ends_with(")")) {
    std::string_view inner = name.substr(6, name.size() - 7);
    Rational k = parse_rational(inner);
    if (!k.is_integer()) throw std::invalid_argument("rank1 needs an integer, got '" + std::string(inner) + "'");
    return rank_one(k.num());
  }
  throw std::invalid_argument("unknown lattice '" + std::string(name) + "'");
}

Gram direct_sum(const Gram& g1, const Gram& g2) {
  const std::size_t n1 = g1.rank();
  const std::size_t n = n1 + g2.rank();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) m(i, j) = g1(i, j);
  for (std::size_t i = 0; i < g2.rank(); ++i)
    for (std::size_t j = 0; j < g2.rank(); ++j) m(n1 + i, n1 + j) = g2(i, j);
  return Gram(std::move(m));
}

Gram k3_lattice() {
  Gram u = hyperbolic_plane();
  Gram e8 = e8_negative();
  return direct_sum(direct_sum(direct_sum(direct_sum(u, u), u), e8), e8);
}

// ----------------------------------------------------------------- Lattice

Lattice::Lattice(Gram ambient, std::vector<IntVector> basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    if (b.size() != ambient_.rank()) throw std::invalid_argument("basis vector has wrong dimension");
  if (!basis_.empty() && hermite_normal_form(basis_).size() != basis_.size())
    throw std::invalid_argument("basis vectors are linearly dependent");
}

Lattice Lattice::full(const Gram& ambient) {
  return Lattice(ambient, IntMatrix::identity(ambient.rank()).row_list());
}

Gram Lattice::gram() const {
  IntMatrix m(rank(), rank());
  std::vector<IntVector> co;
  co.reserve(rank());
  for (const auto& b : basis_) co.push_back(ambient_.covector(b));
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) m(i, j) = dot(co[i], basis_[j]);
  return Gram(std::move(m));
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  if (v.size() != dimension()) throw std::invalid_argument("vector has wrong dimension");
  if (basis_.empty()) return is_zero(v) ? std::optional<IntVector>(IntVector{}) : std::nullopt;
  auto c = solve_in_span(basis_, v);
  if (!c || !is_integral(*c)) return std::nullopt;
  return to_integral(*c);
}

bool Lattice::contains(const Lattice& other) const {
  if (other.dimension() != dimension()) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const IntVector& b) { return contains(b); });
}

IntVector Lattice::combine(const IntVector& coeffs) const {
  if (coeffs.size() != rank()) throw std::invalid_argument("coefficient vector has wrong length");
  IntVector out(dimension());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < dimension(); ++j) out[j] += coeffs[i] * basis_[i][j];
  }
  return out;
}

bool same_lattice(const Lattice& x, const Lattice& y) {
  return x.dimension() == y.dimension() && x.rank() == y.rank() && x.contains(y) && y.contains(x);
}

Lattice sublattice_span(const Gram& ambient, const std::vector<IntVector>& generators) {
  if (generators.empty()) throw std::invalid_argument("empty generator set");
  for (const auto& g : generators)
    if (g.size() != ambient.rank()) throw std::invalid_argument("generator has wrong dimension");
  auto basis = hermite_normal_form(generators);
  if (basis.empty()) throw std::invalid_argument("all-zero generator set");
  return Lattice(ambient, std::move(basis));
}

Integer index_in(const Lattice& sub, const Lattice& super) {
  if (sub.rank() != super.rank()) throw std::invalid_argument("index of a sublattice of lower rank is infinite");
  IntMatrix coords(sub.rank(), sub.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = super.coordinates(sub.basis()[i]);
    if (!c) throw std::invalid_argument("not a sublattice");
    for (std::size_t j = 0; j < sub.rank(); ++j) coords(i, j) = (*c)[j];
  }
  Integer d = determinant(coords);
  return d < 0 ? Integer(-d) : d;
}

Saturation saturation(const Lattice& l) {
  const std::size_t n = l.dimension();
  if (l.rank() == 0) return {l, 1};
  std::vector<IntVector> closure;
  if (l.rank() == n) {
    closure = IntMatrix::identity(n).row_list();
  } else {
    // Annihilator under the standard dot product, then its annihilator.
    auto annihilator = integer_kernel(IntMatrix::from_rows(l.basis(), n));
    closure = integer_kernel(IntMatrix::from_rows(annihilator, n));
  }
  Lattice sat(l.ambient(), std::move(closure));
  Integer index = index_in(l, sat);
  return {std::move(sat), std::move(index)};
}

Lattice orthogonal_complement(const Gram& ambient, const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return Lattice::full(ambient);
  std::vector<IntVector> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(ambient.covector(v));
  return Lattice(ambient, integer_kernel(IntMatrix::from_rows(rows, ambient.rank())));
}

Integer discriminant(const Gram& g) { return determinant(g.matrix()); }
Integer discriminant(const Lattice& l) { return discriminant(l.gram()); }

Signature signature(const Gram& g) {
  const std::size_t n = g.rank();
  std::vector<RatVector> a(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(g(i, j));

  auto swap_index = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };

  Signature s;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][p].is_zero()) ++p;
    if (p == n) {
      // No diagonal pivot left: use e_i + e_j where a_ij != 0.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!a[i][j].is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        s.zero += n - k;
        break;
      }
      for (std::size_t c = 0; c < n; ++c) a[pi][c] += a[pj][c];
      for (std::size_t r = 0; r < n; ++r) a[r][pi] += a[r][pj];
      p = pi;
    }
    swap_index(k, p);
    const Rational pivot = a[k][k];
    (pivot.sign() > 0 ? s.positive : s.negative)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      Rational f = a[i][k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = a[k][i] = Rational();
  }
  return s;
}

std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," + std::to_string(s.zero) + ")";
}

std::string to_string(const Gram& g) {
  std::string out = "[";
  for (std::size_t i = 0; i < g.rank(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < g.rank(); ++j) out += (j ? "," : "") + g(i, j).str();
    out += "]";
  }
  return out + "]";
}

// ----------------------------------------------------------- represents

namespace {

struct BinaryForm {
  Integer a, b, c;  // a x^2 + 2 b xy + c y^2
  Integer operator()(const Integer& x, const Integer& y) const { return a * x * x + 2 * b * x * y + c * y * y; }
};

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Deterministic preference among witnesses: small sup-norm first, then
// small l1-norm, then positive coordinates first.
auto witness_key(const Integer& x, const Integer& y) {
  return std::make_tuple(std::max(abs_int(x), abs_int(y)), abs_int(x) + abs_int(y), Integer(-x), Integer(-y));
}

std::optional<std::array<Integer, 2>> find_witness(const BinaryForm& q, const Integer& target,
                                                   const Integer& xbound, const Integer& ybound) {
  std::optional<std::array<Integer, 2>> best;
  for (Integer x = -xbound; x <= xbound; ++x)
    for (Integer y = -ybound; y <= ybound; ++y) {
      if (q(x, y) != target) continue;
      if (!best || witness_key(x, y) < witness_key((*best)[0], (*best)[1])) best = std::array<Integer, 2>{x, y};
    }
  return best;
}

std::optional<int> congruence_obstruction(const BinaryForm& q, const Integer& target) {
  for (int mod = 2; mod <= kMaxCongruenceModulus; ++mod) {
    Integer m(mod);
    Integer want = target % m;
    if (want < 0) want += m;
    std::set<int> values;
    Integer aa = q.a % m, bb = q.b % m, cc = q.c % m;
    for (int x = 0; x < mod; ++x)
      for (int y = 0; y < mod; ++y) {
        Integer v = (aa * x * x + 2 * bb * x * y + cc * y * y) % m;
        if (v < 0) v += m;
        values.insert(static_cast<int>(v));
      }
    if (!values.contains(static_cast<int>(want))) return mod;
  }
  return std::nullopt;
}

}  // namespace

Representation represents(const Gram& g, const Integer& target, const Integer& search_bound) {
  if (g.rank() != 2) throw std::invalid_argument("represents needs a rank-2 form");
  if (search_bound <= 0) throw std::invalid_argument("search bound must be positive");
  BinaryForm q{g(0, 0), g(0, 1), g(1, 1)};

  Representation out;
  if (auto w = find_witness(q, target, search_bound, search_bound)) {
    out.verdict = Representation::Verdict::Yes;
    out.witness = *w;
    return out;
  }
  if (auto mod = congruence_obstruction(q, target)) {
    out.verdict = Representation::Verdict::NoByCongruence;
    out.modulus = *mod;
    return out;
  }
  // Definite forms: a*Q = (a x + b y)^2 + D y^2 bounds both coordinates.
  const Integer det = q.a * q.c - q.b * q.b;
  if (det > 0) {
    BinaryForm p = q;
    Integer t = target;
    if (q.a < 0) {
      p = {-q.a, -q.b, -q.c};
      t = -target;
    }
    if (t < 0) {
      out.verdict = Representation::Verdict::NoByExhaustion;
      return out;
    }
    Integer ybound = mp::sqrt(Integer(p.a * t / det));
    Integer xbound = mp::sqrt(Integer(p.c * t / det));
    if (auto w = find_witness(p, t, xbound, ybound)) {
      out.verdict = Representation::Verdict::Yes;
      out.witness = *w;
    } else {
      out.verdict = Representation::Verdict::NoByExhaustion;
    }
    return out;
  }
  return out;
}

std::string to_string(const Representation& r) {
  switch (r.verdict) {
    case Representation::Verdict::Yes:
      return "Yes((" + r.witness[0].str() + "," + r.witness[1].str() + "))";
    case Representation::Verdict::NoByCongruence:
      return "NoByCongruence(" + r.modulus.str() + ")";
    case Representation::Verdict::NoByExhaustion:
      return "NoByExhaustion";
    case Representation::Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

}  // namespace k3lab
