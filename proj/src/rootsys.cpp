#include "ltl/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

namespace ltl {

bool Weight::is_dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](long c) { return c >= 0; });
}

bool Weight::is_strictly_dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](long c) { return c > 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.rank() != rank()) throw Error(ErrorKind::BasisMismatch, "weight rank mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.rank() != rank()) throw Error(ErrorKind::BasisMismatch, "weight rank mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

std::string Weight::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  return s + ")";
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (long c : w.coords) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

RationalVector RationalVector::from(const Weight& w) {
  RationalVector v;
  v.basis = Basis::fundamental;
  for (long c : w.coords) v.coords.emplace_back(c);
  return v;
}

Weight WeylElement::apply(const Weight& w) const {
  const std::size_t r = matrix.rows();
  Weight out = Weight::zero(r);
  for (std::size_t i = 0; i < r; ++i) {
    long s = 0;
    for (std::size_t j = 0; j < r; ++j) s += matrix(i, j) * w.coords[j];
    out.coords[i] = s;
  }
  return out;
}

CartanType parse_cartan_type(const std::string& text) {
  if (text.size() < 2 || !std::isalpha(static_cast<unsigned char>(text[0])))
    throw Error(ErrorKind::InvalidInput, "bad Cartan type '" + text + "'");
  CartanType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const std::string digits = text.substr(1);
  if (digits.size() > 4 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorKind::InvalidInput, "bad Cartan type '" + text + "'");
  t.rank = std::stoi(digits);
  return t;
}

namespace {

void validate(const CartanType& t) {
  const bool ok = [&] {
    switch (t.family) {
      case 'A': return t.rank >= 1;
      case 'B':
      case 'C': return t.rank >= 2;
      case 'D': return t.rank >= 2;
      case 'G': return t.rank == 2;
      case 'F': return t.rank == 4;
      default: return false;
    }
  }();
  if (!ok) throw Error(ErrorKind::UnsupportedType, "unsupported Cartan type " + t.name());
}

// Saturates at the maximum instead of wrapping, so huge groups still exceed any cap.
unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
  unsigned long long out;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<unsigned long long>::max();
  return out;
}

unsigned long long factorial(int n) {
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f = saturating_mul(f, static_cast<unsigned long long>(i));
  return f;
}

unsigned long long power_of_two(int n) {
  return n >= 64 ? std::numeric_limits<unsigned long long>::max() : 1ull << n;
}

// d_i c_ij = d_j c_ji, propagated along the Dynkin diagram; each connected
// component is scaled so its long roots get d = 1.
std::vector<mpq_class> symmetrizers(const IntMatrix& c) {
  const std::size_t r = c.rows();
  std::vector<mpq_class> d(r, 0);
  std::vector<bool> seen(r, false);
  for (std::size_t start = 0; start < r; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> component{start};
    d[start] = 1;
    seen[start] = true;
    for (std::size_t k = 0; k < component.size(); ++k) {
      const std::size_t i = component[k];
      for (std::size_t j = 0; j < r; ++j) {
        if (seen[j] || c(i, j) == 0) continue;
        mpq_class ratio(mpz_class(c(i, j)), mpz_class(c(j, i)));
        ratio.canonicalize();
        d[j] = d[i] * ratio;
        seen[j] = true;
        component.push_back(j);
      }
    }
    mpq_class top = 0;
    for (auto i : component) top = std::max(top, d[i]);
    for (auto i : component) d[i] /= top;
  }
  return d;
}

std::vector<std::vector<long>> enumerate_positive_roots(const IntMatrix& c) {
  const std::size_t r = c.rows();
  std::set<std::vector<long>> all;
  std::vector<std::vector<long>> layer;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<long> e(r, 0);
    e[i] = 1;
    all.insert(e);
    layer.push_back(e);
  }
  std::vector<std::vector<long>> ordered = layer;
  while (!layer.empty()) {
    std::set<std::vector<long>> next;
    for (const auto& beta : layer) {
      for (std::size_t i = 0; i < r; ++i) {
        // alpha_i-string through beta: beta - p a_i, ..., beta + q a_i with p - q = <beta, a_i^v>
        long p = 0;
        for (;;) {
          auto down = beta;
          down[i] -= p + 1;
          if (!all.count(down)) break;
          ++p;
        }
        long pairing = 0;
        for (std::size_t j = 0; j < r; ++j) pairing += beta[j] * c(i, j);
        if (p - pairing > 0) {
          auto up = beta;
          up[i] += 1;
          if (!all.count(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    for (const auto& b : layer) all.insert(b);
    ordered.insert(ordered.end(), layer.begin(), layer.end());
  }
  return ordered;
}

std::vector<long> flatten(const IntMatrix& m) { return m.data(); }

}  // namespace

unsigned long long weyl_group_order(const CartanType& t) {
  validate(t);
  switch (t.family) {
    case 'A': return factorial(t.rank + 1);
    case 'B':
    case 'C': return saturating_mul(power_of_two(t.rank), factorial(t.rank));
    case 'D': return saturating_mul(power_of_two(t.rank - 1), factorial(t.rank));
    case 'G': return 12;
    case 'F': return 1152;
  }
  return 0;
}

IntMatrix cartan_matrix(const CartanType& t) {
  validate(t);
  const std::size_t r = static_cast<std::size_t>(t.rank);
  IntMatrix c(r, r, 0);
  for (std::size_t i = 0; i < r; ++i) c(i, i) = 2;
  auto link = [&](std::size_t i, std::size_t j, long cij, long cji) {
    c(i, j) = cij;
    c(j, i) = cji;
  };
  switch (t.family) {
    case 'A':
      for (std::size_t i = 0; i + 1 < r; ++i) link(i, i + 1, -1, -1);
      break;
    case 'B':
      for (std::size_t i = 0; i + 2 < r; ++i) link(i, i + 1, -1, -1);
      link(r - 2, r - 1, -1, -2);  // a_r short
      break;
    case 'C':
      for (std::size_t i = 0; i + 2 < r; ++i) link(i, i + 1, -1, -1);
      link(r - 2, r - 1, -2, -1);  // a_r long
      break;
    case 'D':
      for (std::size_t i = 0; i + 2 < r; ++i) link(i, i + 1, -1, -1);
      if (r >= 3) link(r - 3, r - 1, -1, -1);
      break;
    case 'G':
      link(0, 1, -3, -1);  // a_1 short
      break;
    case 'F':
      link(0, 1, -1, -1);
      link(1, 2, -1, -2);  // a_3, a_4 short
      link(2, 3, -1, -1);
      break;
  }
  return c;
}

long b_g_constant(const CartanType& t) {
  validate(t);
  const long r = t.rank;
  switch (t.family) {
    case 'A': return 2 * (r + 1);
    case 'B': return 4 * r - 2;
    case 'C': return 2 * (r + 1);
    case 'D': return 4 * r - 4;
    case 'G': return 8;
    case 'F': return 18;
  }
  return 0;
}

RootSystemData build_root_system(const CartanType& t, std::size_t weyl_cap) {
  validate(t);
  const unsigned long long order = weyl_group_order(t);
  if (order > weyl_cap)
    throw Error(ErrorKind::WeylCapExceeded, t.name() + " has |W| = " + std::to_string(order) +
                                                " > cap " + std::to_string(weyl_cap));

  RootSystemData rs;
  rs.cartan_type = t;
  rs.cartan = cartan_matrix(t);
  const std::size_t r = rs.cartan.rows();

  rs.symmetrizers = symmetrizers(rs.cartan);
  rs.sym_cartan = RationalMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rs.sym_cartan(i, j) = rs.symmetrizers[i] * rs.cartan(i, j);

  rs.positive_roots = enumerate_positive_roots(rs.cartan);
  for (const auto& beta : rs.positive_roots) {
    Weight w = Weight::zero(r);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < r; ++j) w.coords[k] += rs.cartan(k, j) * beta[j];
    rs.positive_roots_omega.push_back(std::move(w));
  }
  rs.rho = Weight(std::vector<long>(r, 1));

  RationalMatrix dmat(r, r);
  for (std::size_t i = 0; i < r; ++i) dmat(i, i) = rs.symmetrizers[i];
  rs.gram_omega = inverse(to_rational(rs.cartan.transpose())) * dmat;
  rs.gram_omega_inv = inverse(rs.gram_omega);

  mpz_class den = 1;
  for (const auto& q : rs.gram_omega.data()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  rs.form_denominator = den.get_si();
  rs.gram_scaled = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      mpq_class s = rs.gram_omega(i, j) * den;
      rs.gram_scaled(i, j) = s.get_num().get_si();
    }

  rs.dim_g = static_cast<long>(2 * rs.positive_roots.size() + r);
  rs.b_g = b_g_constant(t);

  // W by breadth-first closure over left multiplication with simple reflections;
  // BFS depth is the length.
  std::vector<IntMatrix> simple;
  for (std::size_t i = 0; i < r; ++i) {
    IntMatrix s = IntMatrix::identity(r);
    for (std::size_t k = 0; k < r; ++k) s(k, i) -= rs.cartan(k, i);
    simple.push_back(std::move(s));
  }
  rs.weyl.push_back(WeylElement{IntMatrix::identity(r), 1, 0});
  rs.weyl_index_.emplace(flatten(rs.weyl[0].matrix), 0);
  for (std::size_t k = 0; k < rs.weyl.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      IntMatrix m = simple[i] * rs.weyl[k].matrix;
      auto key = flatten(m);
      if (rs.weyl_index_.count(key)) continue;
      const int len = rs.weyl[k].length + 1;
      rs.weyl_index_.emplace(std::move(key), rs.weyl.size());
      rs.weyl.push_back(WeylElement{std::move(m), (len % 2) ? -1 : 1, len});
    }
  }
  if (rs.weyl.size() != order)
    throw Error(ErrorKind::InvalidInput, "Weyl enumeration mismatch for " + t.name());
  for (std::size_t i = 0; i < r; ++i) rs.simple_index_.push_back(*rs.find_weyl(simple[i]));
  return rs;
}

std::shared_ptr<const RootSystemData> make_root_system(const CartanType& t, std::size_t weyl_cap) {
  return std::make_shared<const RootSystemData>(build_root_system(t, weyl_cap));
}

std::optional<std::size_t> RootSystemData::find_weyl(const IntMatrix& m) const {
  auto it = weyl_index_.find(m.data());
  if (it == weyl_index_.end()) return std::nullopt;
  return it->second;
}

Weight RootSystemData::simple_root(std::size_t i) const {
  Weight w = Weight::zero(rank());
  for (std::size_t k = 0; k < rank(); ++k) w.coords[k] = cartan(k, i);
  return w;
}

long RootSystemData::scaled_form(const Weight& mu, const Weight& nu) const {
  const std::size_t r = rank();
  long s = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (mu.coords[i] == 0) continue;
    long row = 0;
    for (std::size_t j = 0; j < r; ++j) row += gram_scaled(i, j) * nu.coords[j];
    s += mu.coords[i] * row;
  }
  return s;
}

namespace {

std::vector<mpq_class> to_fundamental(const RootSystemData& rs, const RationalVector& v) {
  if (v.coords.size() != rs.rank())
    throw Error(ErrorKind::BasisMismatch, "vector has " + std::to_string(v.coords.size()) +
                                              " coordinates, rank is " + std::to_string(rs.rank()));
  if (v.basis == Basis::fundamental) return v.coords;
  std::vector<mpq_class> out(rs.rank(), 0);
  for (std::size_t k = 0; k < rs.rank(); ++k)
    for (std::size_t j = 0; j < rs.rank(); ++j) out[k] += rs.cartan(k, j) * v.coords[j];
  return out;
}

}  // namespace

mpq_class inner_product(const RootSystemData& rs, const RationalVector& a, const RationalVector& b) {
  const std::size_t r = rs.rank();
  if (a.basis == Basis::simple_root && b.basis == Basis::simple_root) {
    if (a.coords.size() != r || b.coords.size() != r)
      throw Error(ErrorKind::BasisMismatch, "coordinate count differs from rank");
    mpq_class s = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) s += a.coords[i] * rs.sym_cartan(i, j) * b.coords[j];
    return s;
  }
  const auto x = to_fundamental(rs, a);
  const auto y = to_fundamental(rs, b);
  mpq_class s = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) s += x[i] * rs.gram_omega(i, j) * y[j];
  return s;
}

mpq_class inner_product(const RootSystemData& rs, const Weight& a, const Weight& b) {
  if (a.rank() != rs.rank() || b.rank() != rs.rank())
    throw Error(ErrorKind::BasisMismatch, "weight rank differs from root system rank");
  mpq_class q(mpz_class(rs.scaled_form(a, b)), mpz_class(rs.form_denominator));
  q.canonicalize();
  return q;
}

std::vector<mpq_class> pairing_with_fundamental(const RootSystemData& rs, const RationalVector& t) {
  const std::size_t r = rs.rank();
  if (t.coords.size() != r) throw Error(ErrorKind::BasisMismatch, "coordinate count differs from rank");
  std::vector<mpq_class> g(r, 0);
  if (t.basis == Basis::simple_root) {
    for (std::size_t i = 0; i < r; ++i) g[i] = t.coords[i] * rs.symmetrizers[i];  // (a_i, w_j) = d_i delta_ij
    return g;
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g[i] += t.coords[j] * rs.gram_omega(j, i);
  return g;
}

Weight shifted_action(const RootSystemData& rs, const WeylElement& w, const Weight& beta) {
  return w.apply(beta + rs.rho) - rs.rho;
}

namespace {

// Reflects v into the dominant chamber, returning the simple reflections used in order.
std::vector<std::size_t> reflect_to_dominant(const RootSystemData& rs, Weight& v) {
  std::vector<std::size_t> word;
  const std::size_t r = rs.rank();
  for (;;) {
    std::size_t i = 0;
    while (i < r && v.coords[i] >= 0) ++i;
    if (i == r) return word;
    const long c = v.coords[i];
    for (std::size_t k = 0; k < r; ++k) v.coords[k] -= c * rs.cartan(k, i);
    word.push_back(i);
  }
}

}  // namespace

Weight dominant_representative(const RootSystemData& rs, const Weight& mu) {
  Weight v = mu;
  reflect_to_dominant(rs, v);
  return v;
}

std::optional<ShiftedDominant> to_dominant_shifted(const RootSystemData& rs, const Weight& mu) {
  Weight v = mu + rs.rho;
  const auto word = reflect_to_dominant(rs, v);
  if (!v.is_strictly_dominant()) return std::nullopt;
  // g = s_{i_k} ... s_{i_1} maps mu + rho to v; w = g^{-1} = s_{i_1} ... s_{i_k}.
  IntMatrix w = IntMatrix::identity(rs.rank());
  for (std::size_t i : word) w = w * rs.simple_reflection(i).matrix;
  const auto idx = rs.find_weyl(w);
  if (!idx) throw Error(ErrorKind::InvalidInput, "reflection word left the Weyl group");
  return ShiftedDominant{*idx, v - rs.rho};
}

mpq_class casimir_eigenvalue(const RootSystemData& rs, const Weight& lambda) {
  if (!lambda.is_dominant()) throw Error(ErrorKind::NotDominant, lambda.to_string());
  return inner_product(rs, lambda, lambda + 2 * rs.rho);
}

std::vector<long> highest_root(const RootSystemData& rs) {
  auto height = [](const std::vector<long>& b) { return std::accumulate(b.begin(), b.end(), 0L); };
  return *std::max_element(rs.positive_roots.begin(), rs.positive_roots.end(),
                           [&](const auto& a, const auto& b) { return height(a) < height(b); });
}

}  // namespace ltl
