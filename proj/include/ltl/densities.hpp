#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ltl/kernels.hpp"
#include "ltl/rootsys.hpp"

namespace ltl {

enum class DensityKind { xi, eta, eta_extended, gue };

std::string to_string(DensityKind kind);
DensityKind parse_density_kind(const std::string& text);

/// Limiting densities over R^r in fundamental-weight coordinates x = sum x_i w_i.
///
///   xi           K exp(-(x,x)/2)
///   eta          K prod_a (x,a)^2 / prod_a (rho,a) exp(-(x,x)/2), closed dominant cone only
///   eta_extended |W|^{-1} times the eta expression, all of R^r
///   gue          the eta density evaluated through GUE eigenvalues a_j with
///                x_j = a_j - a_{j+1} (type A only)
///
/// with K = sqrt(det gram_omega) / (2 pi)^{r/2}.
class DensityModel {
 public:
  DensityModel(std::shared_ptr<const RootSystemData> rs, DensityKind kind);

  const RootSystemData& root_system() const { return *rs_; }
  DensityKind kind() const { return kind_; }
  std::size_t rank() const { return rs_->rank(); }
  double norm_const() const { return norm_const_; }

  /// Whether the density lives on the closed positive orthant only.
  bool orthant_domain() const { return kind_ == DensityKind::eta || kind_ == DensityKind::gue; }

  /// Throws OutsideDomain for orthant kinds when some x_i < 0.
  double operator()(std::span<const double> x) const;

  /// Same, but returns 0 outside the domain instead of throwing.
  double value_or_zero(std::span<const double> x) const;

  /// (x, x) under the standard form.
  double quadratic_form(std::span<const double> x) const;

  /// prod over positive roots of (x, a).
  double root_product(std::span<const double> x) const;

  /// sqrt((gram_omega^{-1})_ii): marginal standard deviation of the xi limit.
  double axis_sigma(std::size_t i) const { return axis_sigma_[i]; }

 private:
  double gue_value(std::span<const double> x) const;

  std::shared_ptr<const RootSystemData> rs_;
  DensityKind kind_;
  double norm_const_ = 0;
  double rho_product_ = 1;
  double weyl_order_ = 1;
  // integer-valued coefficients scaled by form_denominator; one division per evaluation
  Matrix<double> gram_scaled_;
  std::vector<std::vector<double>> root_coeffs_;  // form_denominator * (x, a) = sum_i coeff_i x_i
  double form_den_ = 1;
  double root_den_ = 1;  // form_denominator ^ (number of positive roots)
  std::vector<double> axis_sigma_;
};

double p_xi(const DensityModel& xi_model, std::span<const double> x);

/// K as a double.
double gaussian_constant(const RootSystemData& rs);

/// prod_a (rho, a), exact.
mpq_class rho_root_product(const RootSystemData& rs);

struct GueIdentity {
  double lhs;
  double rhs;
};

/// lhs = exp(-sum a_k^2 / 2) prod_{i<j} (a_i - a_j)^2;
/// rhs = exp(-(x,x)/2) prod_a (x,a)^2 for type A_{n-1} with x_j = a_j - a_{j+1}.
/// Throws TraceNotZero when |sum a_k| > 1e-12.
GueIdentity gue_identity_check(std::span<const double> a);

/// Truncated box and midpoint resolution used by normalization_quadrature:
/// the box covers the region where the Gaussian exponent exceeds -50.
kernels::Grid quadrature_grid(const DensityModel& model, std::size_t cells_per_axis);

inline constexpr std::size_t kMaxQuadratureRank = 3;

/// Integral of the density over its domain; throws RankTooLarge above rank 3.
double normalization_quadrature(const DensityModel& model, std::size_t cells_per_axis = 0);

}  // namespace ltl
