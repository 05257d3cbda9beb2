#pragma once

// Data-parallel kernels. Each parallel kernel has a serial reference kept
// for tests and for the benchmark; the two must agree exactly (convolution)
// or to rounding (quadrature).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ltl/repchar.hpp"

namespace ltl::kernels {

/// Textbook double loop over both supports into an ordered map.
MultiplicityMap convolve_serial(const MultiplicityMap& a, const MultiplicityMap& b);

/// Output partitioned by first coordinate; each output row is accumulated
/// densely by one thread, so there are no write conflicts and the result does
/// not depend on the thread count.
MultiplicityMap convolve_parallel(const MultiplicityMap& a, const MultiplicityMap& b);

/// Rows wider than this fall back to the serial kernel.
inline constexpr std::size_t kMaxDenseRow = std::size_t{1} << 24;

using Integrand = std::function<double(std::span<const double>)>;

/// Axis-aligned box with a cell count per axis.
struct Grid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::size_t> cells;

  std::size_t dim() const { return lo.size(); }
};

/// Composite midpoint rule, one running sum.
double midpoint_serial(const Integrand& f, const Grid& grid);

/// Composite midpoint rule; slabs along the first axis are summed in parallel
/// and combined by a fixed pairwise tree, so the result is reproducible.
double midpoint_parallel(const Integrand& f, const Grid& grid);

/// Pairwise (tree) sum in index order.
double pairwise_sum(std::span<const double> values);

/// Integral of f over every cell of the grid by tensor Gauss-Legendre with
/// `order` nodes per axis. Cells are flattened row-major.
std::vector<double> cell_integrals_serial(const Integrand& f, const Grid& grid, int order);
std::vector<double> cell_integrals_parallel(const Integrand& f, const Grid& grid, int order);

}  // namespace ltl::kernels
