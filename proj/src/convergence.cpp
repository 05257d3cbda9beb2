#include "ltl/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>

#include "ltl/io.hpp"

namespace ltl {

namespace {

// (t, mu) = sum_j t_j d_j mu_j for t in simple-root and mu in fundamental coordinates.
std::vector<double> simple_root_pairing(const RootSystemData& rs, std::span<const double> t) {
  if (t.size() != rs.rank()) throw Error(ErrorKind::BasisMismatch, "t has wrong dimension");
  std::vector<double> g(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) g[j] = t[j] * rs.symmetrizers[j].get_d();
  return g;
}

std::complex<double> ipow(std::complex<double> z, unsigned long n) {
  std::complex<double> r = 1.0;
  while (n) {
    if (n & 1ul) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

}  // namespace

std::complex<double> char_fn_empirical(const RootSystemData& rs, const DiscreteMeasure& m,
                                       std::span<const double> t) {
  const auto g = simple_root_pairing(rs, t);
  const double s = m.scale();
  double re = 0, im = 0;
  for (const auto& a : m.atoms) {
    double theta = 0;
    for (std::size_t j = 0; j < g.size(); ++j) theta += g[j] * static_cast<double>(a.weight[j]);
    theta /= s;
    const double p = a.prob.get_d();
    re += p * std::cos(theta);
    im += p * std::sin(theta);
  }
  return {re, im};
}

double char_fn_limit_xi(const RootSystemData& rs, std::span<const double> t) {
  if (t.size() != rs.rank()) throw Error(ErrorKind::BasisMismatch, "t has wrong dimension");
  double q = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) q += t[i] * rs.sym_cartan(i, j).get_d() * t[j];
  return std::exp(-0.5 * q);
}

std::complex<double> char_fn_product_formula(const TensorSpec& spec, unsigned long N, std::span<const double> t,
                                             FormConvention convention) {
  const auto counts = factor_counts(spec, N);
  const double s = std::sqrt(mpq_class(sigma_squared(spec, convention) * N).get_d());
  const auto g = simple_root_pairing(*spec.rs, t);
  std::complex<double> phi = 1.0;
  for (const auto& f : counts) {
    if (f.count == 0) continue;
    const auto ch = freudenthal_multiplicities(*spec.rs, f.highest);
    const double dim = ch.total_dim().get_d();
    std::complex<double> z = 0.0;
    for (const auto& [mu, mult] : ch) {
      double theta = 0;
      for (std::size_t j = 0; j < g.size(); ++j) theta += g[j] * static_cast<double>(mu[j]);
      z += mult.get_d() / dim * std::polar(1.0, theta / s);
    }
    phi *= ipow(z, f.count);
  }
  return phi;
}

TGrid default_t_grid(std::size_t rank) {
  static constexpr double kAxis[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  TGrid grid{{}};
  for (std::size_t k = 0; k < rank; ++k) {
    TGrid next;
    for (const auto& prefix : grid)
      for (double v : kAxis) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    grid = std::move(next);
  }
  return grid;
}

double sup_char_error(const RootSystemData& rs, const DiscreteMeasure& xi, const TGrid& t_grid) {
  double worst = 0;
  for (const auto& t : t_grid) worst = std::max(worst, std::abs(char_fn_empirical(rs, xi, t) - char_fn_limit_xi(rs, t)));
  return worst;
}

double sup_char_error(const TensorSpec& spec, unsigned long N, const TGrid& t_grid) {
  return sup_char_error(*spec.rs, xi_measure(spec, N), t_grid);
}

kernels::Grid histogram_grid(const DensityModel& model, std::size_t bins_per_axis) {
  if (bins_per_axis == 0) throw Error(ErrorKind::InvalidInput, "bins_per_axis must be positive");
  kernels::Grid g;
  for (std::size_t i = 0; i < model.rank(); ++i) {
    const double extent = 6.0 * model.axis_sigma(i);
    g.lo.push_back(model.orthant_domain() ? 0.0 : -extent);
    g.hi.push_back(extent);
    g.cells.push_back(bins_per_axis);
  }
  return g;
}

namespace {

/// Sub-points per axis used to spread one atom over its lattice cell.
std::size_t spread_points(std::size_t rank) {
  static constexpr std::size_t kPoints[] = {1, 32, 12, 5};
  return kPoints[std::min(rank, std::size(kPoints) - 1)];
}

}  // namespace

double histogram_tv(const DiscreteMeasure& m, const DensityModel& model, std::size_t bins_per_axis,
                    HistogramMode mode) {
  const std::size_t r = model.rank();
  if (r > kMaxHistogramRank)
    throw Error(ErrorKind::RankTooLarge, "histogram distance is limited to rank " + std::to_string(kMaxHistogramRank));
  if (!m.atoms.empty() && m.rank() != r) throw Error(ErrorKind::BasisMismatch, "measure and model ranks differ");
  const auto grid = histogram_grid(model, bins_per_axis);
  const auto density_mass = kernels::cell_integrals_parallel(
      [&](std::span<const double> x) { return model.value_or_zero(x); }, grid, 6);

  // Offsets (in weight units) of the sub-points of one lattice cell.
  const RootSystemData& rs = model.root_system();
  std::vector<std::vector<double>> offsets{std::vector<double>(r, 0.0)};
  if (mode == HistogramMode::cell_spread) {
    const std::size_t k = spread_points(r);
    offsets.clear();
    std::vector<std::size_t> digit(r, 0);
    for (bool more = true; more;) {
      std::vector<double> off(r, 0.0);
      for (std::size_t i = 0; i < r; ++i) {
        const double c = (static_cast<double>(digit[i]) + 0.5) / static_cast<double>(k) - 0.5;
        const Weight alpha = rs.simple_root(i);
        for (std::size_t j = 0; j < r; ++j) off[j] += c * static_cast<double>(alpha[j]);
      }
      offsets.push_back(std::move(off));
      more = false;
      for (std::size_t i = 0; i < r && !more; ++i) {
        if (++digit[i] < k) more = true;
        else digit[i] = 0;
      }
    }
  }

  std::vector<double> measure_mass(density_mass.size(), 0.0);
  double measure_tail = 0;
  const double s = m.scale();
  const double share = 1.0 / static_cast<double>(offsets.size());
  std::vector<double> h(r);
  for (std::size_t k = 0; k < r; ++k) h[k] = (grid.hi[k] - grid.lo[k]) / static_cast<double>(grid.cells[k]);
  for (const auto& a : m.atoms) {
    const double p = a.prob.get_d() * share;
    if (p == 0) continue;
    for (const auto& off : offsets) {
      std::size_t cell = 0;
      bool inside = true;
      for (std::size_t k = 0; k < r; ++k) {
        const double x = (static_cast<double>(a.weight[k]) + off[k]) / s;
        const double f = std::floor((x - grid.lo[k]) / h[k]);
        if (f < 0 || f >= static_cast<double>(grid.cells[k])) {
          inside = false;
          break;
        }
        cell = cell * grid.cells[k] + static_cast<std::size_t>(f);
      }
      if (inside)
        measure_mass[cell] += p;
      else
        measure_tail += p;
    }
  }

  double l1 = 0, density_in_box = 0;
  for (std::size_t c = 0; c < density_mass.size(); ++c) {
    l1 += std::abs(measure_mass[c] - density_mass[c]);
    density_in_box += density_mass[c];
  }
  const double density_tail = std::max(0.0, 1.0 - density_in_box);
  l1 += std::abs(measure_tail - density_tail);
  return std::clamp(0.5 * l1, 0.0, 1.0);
}

double gaussian_moment(const Matrix<double>& cov, const MultiIndex& k) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (int e = 0; e < k[i]; ++e) idx.push_back(i);
  if (idx.size() % 2) return 0.0;
  std::vector<bool> used(idx.size(), false);
  std::function<double()> pairings = [&]() -> double {
    std::size_t first = 0;
    while (first < idx.size() && used[first]) ++first;
    if (first == idx.size()) return 1.0;
    used[first] = true;
    double s = 0;
    for (std::size_t j = first + 1; j < idx.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      s += cov(idx[first], idx[j]) * pairings();
      used[j] = false;
    }
    used[first] = false;
    return s;
  };
  return pairings();
}

ConvergenceReport convergence_report(const TensorSpec& spec, const std::vector<unsigned long>& N_list,
                                     const TGrid& t_grid, std::size_t bins_per_axis, const ReportOptions& options) {
  spec.validate();
  for (auto N : N_list)
    if (!admissible_N(spec, N)) throw Error(ErrorKind::InadmissibleN, "N = " + std::to_string(N) + " is not admissible");

  ConvergenceReport report;
  report.spec = spec.describe();
  report.N_values = N_list;
  report.bins_per_axis = bins_per_axis;
  report.rows.resize(N_list.size());

  const RootSystemData& rs = *spec.rs;
  const DensityModel eta_model(spec.rs, DensityKind::eta);
  const Matrix<double> cov = to_double(rs.gram_omega_inv);

  // Rows are independent; each one runs the inner kernels serially.
  std::vector<std::exception_ptr> failures(N_list.size());
#pragma omp parallel for schedule(dynamic, 1) if (N_list.size() > 1)
  for (std::size_t i = 0; i < N_list.size(); ++i) try {
    const unsigned long N = N_list[i];
    const MultiplicityMap power = io::cached_tensor_power(spec, N, options.cache_dir);
    const DiscreteMeasure xi = xi_measure(spec, N, power, options.convention);
    const DiscreteMeasure eta = eta_measure(spec, N, racah_decompose(rs, power), options.convention);

    ConvergenceRow row;
    row.N = N;
    row.char_fn_sup_error = sup_char_error(rs, xi, t_grid);
    row.char_fn_scaled_error = row.char_fn_sup_error * std::sqrt(static_cast<double>(N));
    for (const auto& [k, v] : mixed_moments(xi, options.moment_order))
      if (v.order > 0) row.moment_errors.emplace(k, std::abs(v.value - gaussian_moment(cov, k)));
    row.histogram_tv = histogram_tv(eta, eta_model, bins_per_axis);
    report.rows[i] = std::move(row);
  } catch (...) {
    failures[i] = std::current_exception();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].char_fn_sup_error > report.rows[i - 1].char_fn_sup_error) report.char_fn_monotone = false;
    if (report.rows[i].histogram_tv > report.rows[i - 1].histogram_tv) report.histogram_tv_monotone = false;
  }
  return report;
}

}  // namespace ltl
