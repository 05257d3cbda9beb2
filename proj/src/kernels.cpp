#include "ltl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <omp.h>

namespace ltl::kernels {

MultiplicityMap convolve_serial(const MultiplicityMap& a, const MultiplicityMap& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::BasisMismatch, "convolving maps of different rank");
  std::map<Weight, mpz_class> acc;
  for (const auto& [mu, x] : a)
    for (const auto& [nu, y] : b) acc[mu + nu] += x * y;
  MultiplicityMap out(a.rank());
  for (auto& [w, v] : acc) out.append_sorted(w, std::move(v));
  return out;
}

namespace {

struct Row {
  long x0 = 0;
  std::vector<std::pair<std::size_t, const mpz_class*>> cells;
};

struct Extent {
  std::vector<long> lo, hi;
};

Extent extent_of(const MultiplicityMap& m) {
  Extent e;
  e.lo.assign(m.rank(), 0);
  e.hi.assign(m.rank(), 0);
  bool first = true;
  for (const auto& [mu, v] : m) {
    for (std::size_t k = 0; k < m.rank(); ++k) {
      if (first || mu[k] < e.lo[k]) e.lo[k] = mu[k];
      if (first || mu[k] > e.hi[k]) e.hi[k] = mu[k];
    }
    first = false;
  }
  return e;
}

// Groups entries by first coordinate; cell offsets are partial row-major
// indices in the output row layout, so offsets of the two operands add.
std::vector<Row> rows_of(const MultiplicityMap& m, const Extent& e, const std::vector<std::size_t>& stride) {
  std::vector<Row> rows;
  for (const auto& [mu, v] : m) {
    if (rows.empty() || rows.back().x0 != mu[0]) rows.push_back(Row{mu[0], {}});
    std::size_t off = 0;
    for (std::size_t k = 1; k < m.rank(); ++k) off += static_cast<std::size_t>(mu[k] - e.lo[k]) * stride[k];
    rows.back().cells.emplace_back(off, &v);
  }
  return rows;
}

std::vector<long> index_by_x(const std::vector<Row>& rows, long lo, long hi) {
  std::vector<long> idx(static_cast<std::size_t>(hi - lo + 1), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) idx[static_cast<std::size_t>(rows[i].x0 - lo)] = static_cast<long>(i);
  return idx;
}

}  // namespace

MultiplicityMap convolve_parallel(const MultiplicityMap& a, const MultiplicityMap& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::BasisMismatch, "convolving maps of different rank");
  const std::size_t r = a.rank();
  if (a.empty() || b.empty()) return MultiplicityMap(r);

  const Extent ea = extent_of(a), eb = extent_of(b);
  std::vector<long> out_lo(r), out_ext(r);
  for (std::size_t k = 0; k < r; ++k) {
    out_lo[k] = ea.lo[k] + eb.lo[k];
    out_ext[k] = (ea.hi[k] - ea.lo[k]) + (eb.hi[k] - eb.lo[k]) + 1;
  }
  std::vector<std::size_t> stride(r, 1);
  std::size_t row_volume = 1;
  for (std::size_t k = r; k-- > 1;) {
    stride[k] = row_volume;
    row_volume *= static_cast<std::size_t>(out_ext[k]);
    if (row_volume > kMaxDenseRow) return convolve_serial(a, b);
  }

  const auto rows_a = rows_of(a, ea, stride);
  const auto rows_b = rows_of(b, eb, stride);
  const auto idx_a = index_by_x(rows_a, ea.lo[0], ea.hi[0]);
  const auto idx_b = index_by_x(rows_b, eb.lo[0], eb.hi[0]);

  const long v_lo = out_lo[0];
  const long v_count = out_ext[0];
  std::vector<std::vector<std::pair<std::size_t, mpz_class>>> out_rows(static_cast<std::size_t>(v_count));

#pragma omp parallel
  {
    std::vector<mpz_class> buf(row_volume);
    std::vector<char> hit(row_volume, 0);
    std::vector<std::size_t> touched;
#pragma omp for schedule(dynamic, 1)
    for (long vi = 0; vi < v_count; ++vi) {
      const long v = v_lo + vi;
      const long xa_lo = std::max(ea.lo[0], v - eb.hi[0]);
      const long xa_hi = std::min(ea.hi[0], v - eb.lo[0]);
      touched.clear();
      for (long xa = xa_lo; xa <= xa_hi; ++xa) {
        const long ia = idx_a[static_cast<std::size_t>(xa - ea.lo[0])];
        const long ib = idx_b[static_cast<std::size_t>(v - xa - eb.lo[0])];
        if (ia < 0 || ib < 0) continue;
        for (const auto& [pa, va] : rows_a[static_cast<std::size_t>(ia)].cells) {
          for (const auto& [pb, vb] : rows_b[static_cast<std::size_t>(ib)].cells) {
            const std::size_t o = pa + pb;
            mpz_addmul(buf[o].get_mpz_t(), va->get_mpz_t(), vb->get_mpz_t());
            if (!hit[o]) {
              hit[o] = 1;
              touched.push_back(o);
            }
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& dst = out_rows[static_cast<std::size_t>(vi)];
      dst.reserve(touched.size());
      for (std::size_t o : touched) {
        if (buf[o] != 0) dst.emplace_back(o, buf[o]);
        buf[o] = 0;
        hit[o] = 0;
      }
    }
  }

  MultiplicityMap out(r);
  for (long vi = 0; vi < v_count; ++vi) {
    for (auto& [o, val] : out_rows[static_cast<std::size_t>(vi)]) {
      Weight w = Weight::zero(r);
      w[0] = v_lo + vi;
      for (std::size_t k = 1; k < r; ++k)
        w[k] = out_lo[k] + static_cast<long>((o / stride[k]) % static_cast<std::size_t>(out_ext[k]));
      out.append_sorted(std::move(w), std::move(val));
    }
  }
  return out;
}

namespace {

std::size_t total_cells(const Grid& g) {
  std::size_t n = 1;
  for (auto c : g.cells) n *= c;
  return n;
}

void check_grid(const Grid& g) {
  if (g.hi.size() != g.dim() || g.cells.size() != g.dim() || g.dim() == 0)
    throw Error(ErrorKind::InvalidInput, "inconsistent quadrature grid");
  for (std::size_t k = 0; k < g.dim(); ++k)
    if (g.cells[k] == 0 || !(g.hi[k] > g.lo[k])) throw Error(ErrorKind::InvalidInput, "empty quadrature grid axis");
}

// Sum of f at the midpoints of all cells whose first-axis index is `slab`.
double slab_sum(const Integrand& f, const Grid& g, std::size_t slab, std::vector<double>& x) {
  const std::size_t d = g.dim();
  std::vector<std::size_t> idx(d, 0);
  idx[0] = slab;
  auto center = [&](std::size_t k) {
    const double h = (g.hi[k] - g.lo[k]) / static_cast<double>(g.cells[k]);
    return g.lo[k] + (static_cast<double>(idx[k]) + 0.5) * h;
  };
  x[0] = center(0);
  for (std::size_t k = 1; k < d; ++k) x[k] = center(k);
  double s = 0;
  for (;;) {
    s += f(x);
    std::size_t k = d;
    while (k-- > 1) {
      if (++idx[k] < g.cells[k]) {
        x[k] = center(k);
        break;
      }
      idx[k] = 0;
      x[k] = center(k);
    }
    if (k == 0 || d == 1) break;
  }
  return s;
}

double cell_volume(const Grid& g) {
  double v = 1;
  for (std::size_t k = 0; k < g.dim(); ++k) v *= (g.hi[k] - g.lo[k]) / static_cast<double>(g.cells[k]);
  return v;
}

}  // namespace

double midpoint_serial(const Integrand& f, const Grid& grid) {
  check_grid(grid);
  const std::size_t d = grid.dim();
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  double s = 0;
  const std::size_t n = total_cells(grid);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t rem = c;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % grid.cells[k];
      rem /= grid.cells[k];
      const double h = (grid.hi[k] - grid.lo[k]) / static_cast<double>(grid.cells[k]);
      x[k] = grid.lo[k] + (static_cast<double>(idx[k]) + 0.5) * h;
    }
    s += f(x);
  }
  return s * cell_volume(grid);
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double midpoint_parallel(const Integrand& f, const Grid& grid) {
  check_grid(grid);
  const std::size_t slabs = grid.cells[0];
  std::vector<double> partial(slabs, 0.0);
#pragma omp parallel
  {
    std::vector<double> x(grid.dim());
#pragma omp for schedule(static)
    for (std::size_t s = 0; s < slabs; ++s) partial[s] = slab_sum(f, grid, s, x);
  }
  return pairwise_sum(partial) * cell_volume(grid);
}

namespace {

struct GaussRule {
  std::vector<double> nodes, weights;  // on [-1, 1]
};

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

double integrate_cell(const Integrand& f, const Grid& g, std::size_t cell, const GaussRule& rule,
                      std::vector<double>& x) {
  const std::size_t d = g.dim();
  std::vector<double> lo(d), half(d);
  std::size_t rem = cell;
  for (std::size_t k = d; k-- > 0;) {
    const std::size_t i = rem % g.cells[k];
    rem /= g.cells[k];
    const double h = (g.hi[k] - g.lo[k]) / static_cast<double>(g.cells[k]);
    lo[k] = g.lo[k] + static_cast<double>(i) * h;
    half[k] = 0.5 * h;
  }
  const std::size_t q = rule.nodes.size();
  std::size_t points = 1;
  for (std::size_t k = 0; k < d; ++k) points *= q;
  double s = 0;
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t t = p;
    double w = 1;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t j = t % q;
      t /= q;
      x[k] = lo[k] + half[k] * (rule.nodes[j] + 1.0);
      w *= rule.weights[j] * half[k];
    }
    s += w * f(x);
  }
  return s;
}

}  // namespace

std::vector<double> cell_integrals_serial(const Integrand& f, const Grid& grid, int order) {
  check_grid(grid);
  const auto rule = gauss_legendre(order);
  std::vector<double> out(total_cells(grid));
  std::vector<double> x(grid.dim());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = integrate_cell(f, grid, c, rule, x);
  return out;
}

std::vector<double> cell_integrals_parallel(const Integrand& f, const Grid& grid, int order) {
  check_grid(grid);
  const auto rule = gauss_legendre(order);
  std::vector<double> out(total_cells(grid));
#pragma omp parallel
  {
    std::vector<double> x(grid.dim());
#pragma omp for schedule(static)
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = integrate_cell(f, grid, c, rule, x);
  }
  return out;
}

}  // namespace ltl::kernels
