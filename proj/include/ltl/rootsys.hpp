#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ltl/matrix.hpp"

namespace ltl {

/// Cartan-Killing type of a simple Lie algebra. E is recognized only so that
/// it can be rejected with a proper error.
struct CartanType {
  char family = 'A';
  int rank = 1;

  std::string name() const { return std::string(1, family) + std::to_string(rank); }
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Parses "A2", "B3", "G2", ... (case-insensitive family letter).
CartanType parse_cartan_type(const std::string& text);

/// Integral weight in the fundamental-weight basis.
struct Weight {
  std::vector<long> coords;

  Weight() = default;
  explicit Weight(std::vector<long> c) : coords(std::move(c)) {}
  Weight(std::initializer_list<long> c) : coords(c) {}

  static Weight zero(std::size_t rank) { return Weight(std::vector<long>(rank, 0)); }

  std::size_t rank() const { return coords.size(); }
  long operator[](std::size_t i) const { return coords[i]; }
  long& operator[](std::size_t i) { return coords[i]; }

  bool is_dominant() const;
  bool is_strictly_dominant() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (auto& c : a.coords) c = -c;
    return a;
  }
  friend Weight operator*(long k, Weight a) {
    for (auto& c : a.coords) c *= k;
    return a;
  }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight& a, const Weight& b) { return a.coords <=> b.coords; }

  std::string to_string() const;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept;
};

enum class Basis { fundamental, simple_root };

/// Exact rational vector tagged with the basis it is written in.
struct RationalVector {
  Basis basis = Basis::fundamental;
  std::vector<mpq_class> coords;

  static RationalVector from(const Weight& w);
};

struct WeylElement {
  IntMatrix matrix;  // acts on fundamental-weight coordinates
  int sign = 1;
  int length = 0;

  Weight apply(const Weight& w) const;
};

struct RootSystemData {
  CartanType cartan_type;
  IntMatrix cartan;                  // c_ij = 2(a_i,a_j)/(a_i,a_i)
  std::vector<mpq_class> symmetrizers;
  RationalMatrix sym_cartan;         // diag(d) * C, Gram matrix of simple roots
  std::vector<std::vector<long>> positive_roots;  // simple-root coordinates
  std::vector<Weight> positive_roots_omega;       // same roots, fundamental-weight coordinates
  Weight rho;
  RationalMatrix gram_omega;         // (w_i, w_j)
  RationalMatrix gram_omega_inv;
  std::vector<WeylElement> weyl;     // weyl[0] is the identity
  long b_g = 0;
  long dim_g = 0;

  /// gram_omega scaled by form_denominator to an integer matrix.
  IntMatrix gram_scaled;
  long form_denominator = 1;

  std::size_t rank() const { return cartan.rows(); }

  /// Index into weyl of the element with the given matrix.
  std::optional<std::size_t> find_weyl(const IntMatrix& m) const;

  /// Simple reflection s_i as an element of W.
  const WeylElement& simple_reflection(std::size_t i) const { return weyl[simple_index_[i]]; }

  /// Fundamental-weight coordinates of the simple root a_i (column i of C).
  Weight simple_root(std::size_t i) const;

  /// (mu, nu) * form_denominator, exact integer.
  long scaled_form(const Weight& mu, const Weight& nu) const;

 private:
  friend RootSystemData build_root_system(const CartanType&, std::size_t);
  std::map<std::vector<long>, std::size_t> weyl_index_;
  std::vector<std::size_t> simple_index_;
};

inline constexpr std::size_t kDefaultWeylCap = 10000;

/// Standard Weyl group order for the type (no enumeration).
unsigned long long weyl_group_order(const CartanType& t);

IntMatrix cartan_matrix(const CartanType& t);

/// Table value b_g = (Killing form) / (standard form); twice the dual Coxeter number.
long b_g_constant(const CartanType& t);

RootSystemData build_root_system(const CartanType& t, std::size_t weyl_cap = kDefaultWeylCap);
std::shared_ptr<const RootSystemData> make_root_system(const CartanType& t,
                                                       std::size_t weyl_cap = kDefaultWeylCap);

mpq_class inner_product(const RootSystemData& rs, const RationalVector& a, const RationalVector& b);
mpq_class inner_product(const RootSystemData& rs, const Weight& a, const Weight& b);

/// g_i = (t, w_i), so that (t, mu) = sum_i g_i mu_i for mu in fundamental coordinates.
std::vector<mpq_class> pairing_with_fundamental(const RootSystemData& rs, const RationalVector& t);

/// w * beta = w(beta + rho) - rho.
Weight shifted_action(const RootSystemData& rs, const WeylElement& w, const Weight& beta);

struct ShiftedDominant {
  std::size_t weyl_index;  // into rs.weyl
  Weight dominant;         // lambda in P_+ with w * lambda = mu
};

/// Returns nullopt when mu + rho lies on a reflecting hyperplane (mu on a shifted wall).
std::optional<ShiftedDominant> to_dominant_shifted(const RootSystemData& rs, const Weight& mu);

/// Dominant element of the (linear) W-orbit of mu.
Weight dominant_representative(const RootSystemData& rs, const Weight& mu);

/// (lambda, lambda + 2 rho); lambda must be dominant.
mpq_class casimir_eigenvalue(const RootSystemData& rs, const Weight& lambda);

/// Positive root of maximal height.
std::vector<long> highest_root(const RootSystemData& rs);

}  // namespace ltl
