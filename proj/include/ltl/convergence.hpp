#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltl/densities.hpp"
#include "ltl/measures.hpp"

namespace ltl {

/// phi(t) = E exp(i (t, X)); t is given in simple-root coordinates.
std::complex<double> char_fn_empirical(const RootSystemData& rs, const DiscreteMeasure& m,
                                       std::span<const double> t);

/// exp(-(t,t)/2), t in simple-root coordinates.
double char_fn_limit_xi(const RootSystemData& rs, std::span<const double> t);

/// The same characteristic function of xi(N) from the factorization
/// prod_l (ch V_l(e^{i t/(sigma sqrt N)}) / dim V_l)^{N_l}; never touches the
/// tensor power.
std::complex<double> char_fn_product_formula(const TensorSpec& spec, unsigned long N, std::span<const double> t,
                                             FormConvention convention = FormConvention::consistent);

using TGrid = std::vector<std::vector<double>>;

/// 5 points per axis in [-2, 2], simple-root coordinates.
TGrid default_t_grid(std::size_t rank);

double sup_char_error(const RootSystemData& rs, const DiscreteMeasure& xi, const TGrid& t_grid);
double sup_char_error(const TensorSpec& spec, unsigned long N, const TGrid& t_grid);

/// Box partition used by histogram_tv: [0, 6 sigma_i] per axis for orthant
/// densities, [-6 sigma_i, 6 sigma_i] otherwise.
kernels::Grid histogram_grid(const DensityModel& model, std::size_t bins_per_axis);

/// How atoms enter the histogram.
///   point        each atom's mass goes to the bin containing the atom
///   cell_spread  each atom's mass is spread uniformly over its root-lattice
///                cell {mu + sum c_i alpha_i : c_i in [-1/2, 1/2)}, the
///                lattice analogue of a continuity correction; bins then no
///                longer alias against the lattice spacing
enum class HistogramMode { point, cell_spread };

/// Half the L1 distance between binned measure mass and binned density mass,
/// with everything outside the box lumped into one tail cell.
double histogram_tv(const DiscreteMeasure& m, const DensityModel& model, std::size_t bins_per_axis,
                    HistogramMode mode = HistogramMode::cell_spread);

inline constexpr std::size_t kMaxHistogramRank = 3;

/// Gaussian moment E[prod x_i^k_i] for N(0, cov), by Isserlis' theorem.
double gaussian_moment(const Matrix<double>& cov, const MultiIndex& k);

struct ConvergenceRow {
  unsigned long N = 0;
  double char_fn_sup_error = 0;
  double char_fn_scaled_error = 0;  // times sqrt(N); recorded only
  std::map<MultiIndex, double> moment_errors;
  double histogram_tv = 0;
};

struct ConvergenceReport {
  std::string spec;
  std::vector<unsigned long> N_values;
  std::vector<ConvergenceRow> rows;
  std::size_t bins_per_axis = 0;
  bool char_fn_monotone = true;
  bool histogram_tv_monotone = true;
};

struct ReportOptions {
  FormConvention convention = FormConvention::consistent;
  std::optional<std::filesystem::path> cache_dir;
  int moment_order = 4;
};

inline constexpr std::size_t kDefaultHistogramBins = 16;

ConvergenceReport convergence_report(const TensorSpec& spec, const std::vector<unsigned long>& N_list,
                                     const TGrid& t_grid, std::size_t bins_per_axis = kDefaultHistogramBins,
                                     const ReportOptions& options = {});

}  // namespace ltl
