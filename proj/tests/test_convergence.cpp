#include <doctest.h>

#include <cmath>
#include <random>

#include "ltl/convergence.hpp"
#include "support.hpp"

using namespace ltl;
using ltl::testing::close_rel;
using ltl::testing::rs_of;

namespace {

TensorSpec a1_spec() { return TensorSpec{rs_of("A1"), {{Weight{1}, 1}}}; }
TensorSpec a2_spec() { return TensorSpec{rs_of("A2"), {{Weight{1, 0}, 1}}}; }


}  // namespace

TEST_CASE("characteristic functions at the origin and on a root") {
  const auto spec = a1_spec();
  const auto xi = xi_measure(spec, 4);
  const std::vector<double> zero{0.0};
  CHECK(char_fn_empirical(*spec.rs, xi, zero) == std::complex<double>(1.0, 0.0));
  CHECK(char_fn_limit_xi(*spec.rs, zero) == 1.0);
  CHECK(close_rel(char_fn_limit_xi(*spec.rs, std::vector{1.0}), std::exp(-1.0), 1e-15));
  // N signs: E exp(i t m / s) = cos(t / s)^N with (t, w_1) = 1 for t = a_1.
  const double s = xi.scale();
  CHECK(close_rel(char_fn_empirical(*spec.rs, xi, std::vector{1.0}).real(), std::pow(std::cos(1.0 / s), 4), 1e-14));
}

TEST_CASE("product formula agrees with the full tensor power") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& spec : {a2_spec(), TensorSpec{rs_of("B2"), {{Weight{1, 0}, 1}, {Weight{0, 1}, mpq_class(1, 2)}}},
                           TensorSpec{rs_of("G2"), {{Weight{1, 0}, 1}}}}) {
    CAPTURE(spec.describe());
    const unsigned long N = 6;
    const auto xi = xi_measure(spec, N);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> t(spec.rs->rank());
      for (auto& c : t) c = u(rng);
      const auto a = char_fn_empirical(*spec.rs, xi, t);
      const auto b = char_fn_product_formula(spec, N, t);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }
}

TEST_CASE("sup error bounds") {
  const auto spec = a2_spec();
  CHECK(sup_char_error(spec, 4, TGrid{{0.0, 0.0}}) == 0.0);
  const auto grid = default_t_grid(2);
  CHECK(grid.size() == 25);
  const double e = sup_char_error(spec, 4, grid);
  CHECK(e > 0.0);
  CHECK(e <= 2.0);
  CHECK(default_t_grid(3).size() == 125);
}

TEST_CASE("histogram distance of a fine discretization of the density is small") {
  // A1 xi limit discretized on the lattice 2Z / s with s = 100; every atom
  // gets the density mass of its lattice cell (midpoint rule).
  const auto rs = rs_of("A1");
  const DensityModel model(rs, DensityKind::xi);
  DiscreteMeasure m;
  m.kind = MeasureKind::xi;
  m.sigma2 = 1;
  m.N = 10000;
  const double s = 100.0;
  for (long k = -2000; k <= 2000; k += 2) {
    const double x = static_cast<double>(k) / s;
    m.atoms.push_back({Weight{k}, mpq_class(model(std::vector{x}) * 2.0 / s)});
  }
  CHECK(histogram_tv(m, model, 16, HistogramMode::cell_spread) < 1e-4);
  CHECK(histogram_tv(m, model, 16, HistogramMode::point) < 1e-2);
}

TEST_CASE("histogram distance of disjoint supports is one") {
  const auto rs = rs_of("A2");
  const DensityModel model(rs, DensityKind::eta);
  DiscreteMeasure m;
  m.kind = MeasureKind::eta;
  m.sigma2 = 1;
  m.N = 1;
  m.atoms.push_back({Weight{1000, 1000}, 1});
  CHECK(close_rel(histogram_tv(m, model, 8), 1.0, 1e-9));
  CHECK_THROWS_AS(histogram_tv(m, DensityModel(rs_of("A4"), DensityKind::xi), 4), Error);
}

TEST_CASE("histogram distance matches the independent oracle") {
  // Frozen from a separate Python implementation (brute-force characters,
  // decomposition through the Weyl denominator, 6-point Gauss-Legendre bins).
  const auto a1 = a1_spec();
  const DensityModel a1_eta(a1.rs, DensityKind::eta);
  const auto eta16 = eta_measure(a1, 16);
  CHECK(histogram_tv(eta16, a1_eta, 16, HistogramMode::point) == doctest::Approx(0.2725282613972415).epsilon(1e-10));
  CHECK(histogram_tv(eta16, a1_eta, 16, HistogramMode::cell_spread) ==
        doctest::Approx(0.12451844363517228).epsilon(1e-10));

  const auto a2 = a2_spec();
  const DensityModel a2_eta(a2.rs, DensityKind::eta);
  const auto eta = eta_measure(a2, 16);
  CHECK(histogram_tv(eta, a2_eta, 16, HistogramMode::point) == doctest::Approx(0.6409896125560091).epsilon(1e-10));
  CHECK(histogram_tv(eta, a2_eta, 16, HistogramMode::cell_spread) ==
        doctest::Approx(0.36683820975901854).epsilon(1e-10));
}

TEST_CASE("Gaussian moments by pairings") {
  Matrix<double> id{{1.0, 0.0}, {0.0, 1.0}};
  CHECK(gaussian_moment(id, {4, 0}) == 3.0);
  CHECK(gaussian_moment(id, {2, 2}) == 1.0);
  CHECK(gaussian_moment(id, {6, 0}) == 15.0);
  CHECK(gaussian_moment(id, {1, 2}) == 0.0);
  Matrix<double> c{{2.0, 0.5}, {0.5, 1.0}};
  CHECK(gaussian_moment(c, {2, 2}) == doctest::Approx(2.0 * 1.0 + 2 * 0.25));
  CHECK(gaussian_moment(c, {1, 1}) == 0.5);
  CHECK(gaussian_moment(c, {0, 0}) == 1.0);
}

TEST_CASE("convergence report") {
  const auto single = convergence_report(a1_spec(), {8}, default_t_grid(1));
  CHECK(single.rows.size() == 1);
  CHECK(single.char_fn_monotone);
  CHECK(single.histogram_tv_monotone);

  const auto a1 = convergence_report(a1_spec(), {4, 16, 64, 256}, default_t_grid(1));
  CHECK(a1.char_fn_monotone);
  CHECK(a1.histogram_tv_monotone);
  CHECK(a1.rows.back().histogram_tv < 0.05);
  // second moment of the A1 xi coordinate is exactly 2, so its error vanishes
  CHECK(a1.rows.back().moment_errors.at({2}) < 1e-12);

  CHECK_THROWS_AS(convergence_report(TensorSpec{rs_of("A1"), {{Weight{1}, mpq_class(1, 2)}}}, {3}, default_t_grid(1)),
                  Error);
}
