#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ltl/rootsys.hpp"

namespace ltl {

/// Sparse map weight -> multiplicity, i.e. a formal character sum z^mu dim V(mu).
/// Iteration order is the lexicographic order of the weights.
class MultiplicityMap {
 public:
  using Entries = std::map<Weight, mpz_class>;

  MultiplicityMap() = default;
  explicit MultiplicityMap(std::size_t rank) : rank_(rank) {}

  /// {0: 1}, the character of the trivial representation.
  static MultiplicityMap unit(std::size_t rank);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const mpz_class& total_dim() const { return total_; }
  const Entries& entries() const { return entries_; }
  Entries::const_iterator begin() const { return entries_.begin(); }
  Entries::const_iterator end() const { return entries_.end(); }

  /// Zero for weights outside the support.
  mpz_class at(const Weight& mu) const;

  /// Adds delta (which may be negative) and drops the entry if it reaches zero.
  void add(const Weight& mu, const mpz_class& delta);

  /// Appends an entry known to sort after every existing key.
  void append_sorted(Weight mu, mpz_class value);

  /// Scaled accumulation: *this += k * other.
  void add_scaled(const MultiplicityMap& other, const mpz_class& k);

  friend bool operator==(const MultiplicityMap& a, const MultiplicityMap& b) {
    return a.rank_ == b.rank_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rank_ = 0;
  Entries entries_;
  mpz_class total_ = 0;
};

/// Irreducible multiplicities [V : V_mu], keyed by dominant mu.
struct IrrepDecomposition {
  std::map<Weight, mpz_class> components;

  friend bool operator==(const IrrepDecomposition&, const IrrepDecomposition&) = default;
};

/// Weyl dimension formula; lambda must be dominant.
mpz_class weyl_dim(const RootSystemData& rs, const Weight& lambda);

/// All weight multiplicities of V_lambda by Freudenthal's recursion on the
/// dominant weights, expanded over W-orbits.
MultiplicityMap freudenthal_multiplicities(const RootSystemData& rs, const Weight& lambda);

/// Dominant weights of V_lambda with their multiplicities.
std::map<Weight, mpz_class> dominant_multiplicities(const RootSystemData& rs, const Weight& lambda);

/// Product of characters. Runs the OpenMP kernel; see kernels.hpp for the
/// serial reference.
MultiplicityMap convolve(const MultiplicityMap& a, const MultiplicityMap& b);

/// a^{*n} by repeated squaring.
MultiplicityMap convolution_power(const MultiplicityMap& a, unsigned long n);

struct TensorFactor {
  Weight highest;
  unsigned long count = 0;
};

/// Character of the tensor product of V_{lambda_l}^{(x) N_l}.
MultiplicityMap tensor_power_multiplicities(const RootSystemData& rs,
                                            const std::vector<TensorFactor>& factors);

/// Brauer-Klimyk / Racah-Speiser extraction:
/// [V : V_mu] = sum_w (-1)^w m(mu + rho - w rho).
IrrepDecomposition racah_decompose(const RootSystemData& rs, const MultiplicityMap& m);

/// Independent oracle: repeatedly strip the highest dominant weight's
/// irreducible character. Slow; for tests.
IrrepDecomposition peel_off_decompose(const RootSystemData& rs, const MultiplicityMap& m);

/// sum_mu [V:V_mu] * freudenthal(mu).
MultiplicityMap recompose(const RootSystemData& rs, const IrrepDecomposition& d);

/// sum_mu [V:V_mu] * dim V_mu.
mpz_class decomposition_dimension(const RootSystemData& rs, const IrrepDecomposition& d);

enum class FormConvention { consistent, paper };

struct TraceIdentity {
  mpq_class lhs;
  mpq_class rhs;
};

/// lhs = sum_mu dim V_lambda(mu) (t, mu)^2;
/// rhs = (lambda, lambda + 2 rho) dim V_lambda / dim g * (t, t), multiplied by
/// b_g under FormConvention::paper.
TraceIdentity trace_identity_check(const RootSystemData& rs, const Weight& lambda,
                                   const RationalVector& t,
                                   FormConvention convention = FormConvention::consistent);

}  // namespace ltl
