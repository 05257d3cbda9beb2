#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ltl/repchar.hpp"

namespace ltl {

struct SpecFactor {
  Weight highest;
  mpq_class tau;
};

/// Tensor-power recipe: N_l = tau_l * N copies of V_{lambda_l}.
struct TensorSpec {
  std::shared_ptr<const RootSystemData> rs;
  std::vector<SpecFactor> factors;

  /// Throws InvalidInput / NotDominant when the invariants fail.
  void validate() const;
  std::string describe() const;
};

enum class MeasureKind { xi, eta, eta_extended };

std::string to_string(MeasureKind kind);

struct Atom {
  Weight weight;  // the point is weight / sqrt(sigma2 * N), fundamental-weight coordinates
  mpq_class prob;
};

/// Finite probability measure on weights scaled by sigma sqrt(N). The scale
/// is kept symbolically through sigma2 so all identities stay exact.
struct DiscreteMeasure {
  MeasureKind kind = MeasureKind::xi;
  std::vector<Atom> atoms;  // sorted by weight, pairwise distinct
  mpq_class sigma2;
  unsigned long N = 1;

  std::size_t rank() const { return atoms.empty() ? 0 : atoms.front().weight.rank(); }
  double scale() const;
  mpq_class scale_squared() const { return sigma2 * N; }
  std::vector<double> point(std::size_t i) const;
  std::vector<double> probabilities() const;
  mpq_class total_mass() const;

  /// Zero for weights that carry no atom.
  mpq_class probability_at(const Weight& mu) const;
};

mpq_class sigma_squared(const TensorSpec& spec, FormConvention convention = FormConvention::consistent);

bool admissible_N(const TensorSpec& spec, unsigned long N);

/// Tensor factors (lambda_l, tau_l N); throws InadmissibleN.
std::vector<TensorFactor> factor_counts(const TensorSpec& spec, unsigned long N);

/// Character of the N-th tensor power described by spec.
MultiplicityMap tensor_power_for(const TensorSpec& spec, unsigned long N);

DiscreteMeasure xi_measure(const TensorSpec& spec, unsigned long N,
                           FormConvention convention = FormConvention::consistent);
DiscreteMeasure xi_measure(const TensorSpec& spec, unsigned long N, const MultiplicityMap& power,
                           FormConvention convention = FormConvention::consistent);

DiscreteMeasure eta_measure(const TensorSpec& spec, unsigned long N,
                            FormConvention convention = FormConvention::consistent);
DiscreteMeasure eta_measure(const TensorSpec& spec, unsigned long N, const IrrepDecomposition& decomposition,
                            FormConvention convention = FormConvention::consistent);

DiscreteMeasure eta_extended_measure(const TensorSpec& spec, unsigned long N,
                                     FormConvention convention = FormConvention::consistent);
/// Spreads each eta atom over its shifted W-orbit with mass |W|^{-1} each.
DiscreteMeasure eta_extended_measure(const RootSystemData& rs, const DiscreteMeasure& eta);

/// Pushes every atom to its dominant shifted representative (w * lambda = mu).
/// Atoms on shifted walls must carry zero mass.
DiscreteMeasure pushforward_to_dominant(const RootSystemData& rs, const DiscreteMeasure& m);

/// Moment value c * (sigma2 N)^(-order/2); exact when order is even.
struct MomentValue {
  mpq_class coefficient;
  int order = 0;
  std::optional<mpq_class> exact;
  double value = 0.0;
};

using MultiIndex = std::vector<int>;

/// All mixed moments E[prod x_i^k_i] with |k| <= max_order (max 6), x in
/// fundamental-weight coordinates.
std::map<MultiIndex, MomentValue> mixed_moments(const DiscreteMeasure& m, int max_order);

/// E[(t, X)^2], exact.
mpq_class directional_second_moment(const RootSystemData& rs, const DiscreteMeasure& m, const RationalVector& t);

}  // namespace ltl
