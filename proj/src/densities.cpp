#include "ltl/densities.hpp"

#include <cmath>
#include <numbers>

namespace ltl {

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::xi: return "xi";
    case DensityKind::eta: return "eta";
    case DensityKind::eta_extended: return "eta-extended";
    case DensityKind::gue: return "gue";
  }
  return "?";
}

DensityKind parse_density_kind(const std::string& text) {
  if (text == "xi") return DensityKind::xi;
  if (text == "eta") return DensityKind::eta;
  if (text == "eta-extended" || text == "eta_extended") return DensityKind::eta_extended;
  if (text == "gue") return DensityKind::gue;
  throw Error(ErrorKind::InvalidInput, "unknown density kind '" + text + "'");
}

double gaussian_constant(const RootSystemData& rs) {
  const double det = determinant(rs.gram_omega).get_d();
  return std::sqrt(det) / std::pow(2.0 * std::numbers::pi, static_cast<double>(rs.rank()) / 2.0);
}

mpq_class rho_root_product(const RootSystemData& rs) {
  mpq_class p = 1;
  for (const auto& alpha : rs.positive_roots_omega) p *= inner_product(rs, rs.rho, alpha);
  return p;
}

DensityModel::DensityModel(std::shared_ptr<const RootSystemData> rs, DensityKind kind)
    : rs_(std::move(rs)), kind_(kind) {
  if (!rs_) throw Error(ErrorKind::InvalidInput, "density model without root system");
  if (kind_ == DensityKind::gue && rs_->cartan_type.family != 'A')
    throw Error(ErrorKind::UnsupportedType, "GUE density is defined for type A only");
  const std::size_t r = rs_->rank();
  form_den_ = static_cast<double>(rs_->form_denominator);
  gram_scaled_ = Matrix<double>(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram_scaled_(i, j) = static_cast<double>(rs_->gram_scaled(i, j));
  for (const auto& alpha : rs_->positive_roots_omega) {
    std::vector<double> c(r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) c[i] += gram_scaled_(i, j) * static_cast<double>(alpha[j]);
    root_coeffs_.push_back(std::move(c));
    root_den_ *= form_den_;
  }
  rho_product_ = rho_root_product(*rs_).get_d();
  weyl_order_ = static_cast<double>(rs_->weyl.size());
  norm_const_ = gaussian_constant(*rs_);
  for (std::size_t i = 0; i < r; ++i) axis_sigma_.push_back(std::sqrt(rs_->gram_omega_inv(i, i).get_d()));
}

double DensityModel::quadratic_form(std::span<const double> x) const {
  const std::size_t r = rank();
  double s = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) s += x[i] * gram_scaled_(i, j) * x[j];
  return s / form_den_;
}

double DensityModel::root_product(std::span<const double> x) const {
  double p = 1;
  for (const auto& c : root_coeffs_) {
    double v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * x[i];
    p *= v;
  }
  return p / root_den_;
}

double DensityModel::gue_value(std::span<const double> x) const {
  const std::size_t n = rank() + 1;
  std::vector<double> a(n);
  double top = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) top += static_cast<double>(n - 1 - j) * x[j];
  a[0] = top / static_cast<double>(n);
  for (std::size_t j = 0; j + 1 < n; ++j) a[j + 1] = a[j] - x[j];
  double sq = 0, vandermonde = 1;
  for (std::size_t i = 0; i < n; ++i) {
    sq += a[i] * a[i];
    for (std::size_t j = i + 1; j < n; ++j) vandermonde *= (a[i] - a[j]) * (a[i] - a[j]);
  }
  return norm_const_ / rho_product_ * vandermonde * std::exp(-0.5 * sq);
}

double DensityModel::operator()(std::span<const double> x) const {
  if (x.size() != rank()) throw Error(ErrorKind::BasisMismatch, "point dimension differs from rank");
  if (orthant_domain())
    for (double c : x)
      if (c < 0) throw Error(ErrorKind::OutsideDomain, "density is supported on the closed dominant cone");
  switch (kind_) {
    case DensityKind::xi: return norm_const_ * std::exp(-0.5 * quadratic_form(x));
    case DensityKind::eta: {
      const double p = root_product(x);
      return norm_const_ * p * p / rho_product_ * std::exp(-0.5 * quadratic_form(x));
    }
    case DensityKind::eta_extended: {
      const double p = root_product(x);
      return norm_const_ * p * p / rho_product_ / weyl_order_ * std::exp(-0.5 * quadratic_form(x));
    }
    case DensityKind::gue: return gue_value(x);
  }
  return 0;
}

double DensityModel::value_or_zero(std::span<const double> x) const {
  if (orthant_domain())
    for (double c : x)
      if (c < 0) return 0.0;
  return (*this)(x);
}

double p_xi(const DensityModel& xi_model, std::span<const double> x) {
  if (xi_model.kind() != DensityKind::xi) throw Error(ErrorKind::InvalidInput, "p_xi needs a xi model");
  return xi_model(x);
}

GueIdentity gue_identity_check(std::span<const double> a) {
  const std::size_t n = a.size();
  if (n < 2) throw Error(ErrorKind::InvalidInput, "need at least two eigenvalues");
  double trace = 0;
  for (double v : a) trace += v;
  if (std::abs(trace) > 1e-12) throw Error(ErrorKind::TraceNotZero, "sum of a_k is " + std::to_string(trace));

  GueIdentity out{};
  double sq = 0, vandermonde = 1;
  for (std::size_t i = 0; i < n; ++i) {
    sq += a[i] * a[i];
    for (std::size_t j = i + 1; j < n; ++j) vandermonde *= (a[i] - a[j]) * (a[i] - a[j]);
  }
  out.lhs = std::exp(-0.5 * sq) * vandermonde;

  auto rs = make_root_system(CartanType{'A', static_cast<int>(n - 1)});
  DensityModel model(rs, DensityKind::eta_extended);
  std::vector<double> x(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) x[j] = a[j] - a[j + 1];
  const double p = model.root_product(x);
  out.rhs = std::exp(-0.5 * model.quadratic_form(x)) * p * p;
  return out;
}

kernels::Grid quadrature_grid(const DensityModel& model, std::size_t cells_per_axis) {
  kernels::Grid g;
  for (std::size_t i = 0; i < model.rank(); ++i) {
    // exponent (x,x)/2 = 50 bounds |x_i| by 10 * axis sigma
    const double extent = 10.0 * model.axis_sigma(i);
    g.lo.push_back(model.orthant_domain() ? 0.0 : -extent);
    g.hi.push_back(extent);
    g.cells.push_back(model.orthant_domain() ? cells_per_axis : 2 * cells_per_axis);
  }
  return g;
}

double normalization_quadrature(const DensityModel& model, std::size_t cells_per_axis) {
  if (model.rank() > kMaxQuadratureRank)
    throw Error(ErrorKind::RankTooLarge, "quadrature is limited to rank " + std::to_string(kMaxQuadratureRank));
  if (cells_per_axis == 0) {
    static constexpr std::size_t kDefault[] = {0, 4000, 800, 120};
    cells_per_axis = kDefault[model.rank()];
  }
  const auto grid = quadrature_grid(model, cells_per_axis);
  return kernels::midpoint_parallel([&](std::span<const double> x) { return model(x); }, grid);
}

}  // namespace ltl
