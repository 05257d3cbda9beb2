#include <doctest.h>

#include <random>

#include "ltl/measures.hpp"
#include "support.hpp"

using namespace ltl;
using ltl::testing::random_dominant;
using ltl::testing::random_rational;
using ltl::testing::rs_of;

namespace {

TensorSpec spec_of(const std::string& type, std::vector<SpecFactor> factors) {
  return TensorSpec{rs_of(type), std::move(factors)};
}

TensorSpec a1_fundamental() { return spec_of("A1", {{Weight{1}, 1}}); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

std::map<Weight, mpq_class> as_map(const DiscreteMeasure& m) {
  std::map<Weight, mpq_class> out;
  for (const auto& a : m.atoms) out[a.weight] = a.prob;
  return out;
}

}  // namespace

TEST_CASE("sigma squared and the variance oracle") {
  const auto spec = a1_fundamental();
  CHECK(sigma_squared(spec) == mpq_class(1, 2));
  CHECK(sigma_squared(spec, FormConvention::paper) == 2);

  // The limiting A1 density exp(-x^2/4) has variance 2; the exact variance of
  // the xi(N) coordinate is 1/sigma^2, which singles out the consistent convention.
  for (unsigned long N = 1; N <= 8; ++N) {
    const auto consistent = mixed_moments(xi_measure(spec, N), 2);
    REQUIRE(consistent.at({2}).exact.has_value());
    CHECK(*consistent.at({2}).exact == 2);
    const auto paper = mixed_moments(xi_measure(spec, N, FormConvention::paper), 2);
    CHECK(*paper.at({2}).exact == mpq_class(1, 2));
  }

  CHECK(kind_of([] { sigma_squared(spec_of("A2", {{Weight{0, 0}, 1}})); }) == ErrorKind::DegenerateSpec);
}

TEST_CASE("admissible N") {
  const auto rs = rs_of("A2");
  const TensorSpec half{rs, {{Weight{1, 0}, mpq_class(1, 2)}}};
  CHECK(admissible_N(half, 4));
  CHECK_FALSE(admissible_N(half, 3));
  const TensorSpec two{rs, {{Weight{1, 0}, 1}, {Weight{0, 1}, mpq_class(2, 3)}}};
  CHECK(admissible_N(two, 6));
  CHECK_FALSE(admissible_N(two, 4));
  CHECK(kind_of([&] { factor_counts(two, 4); }) == ErrorKind::InadmissibleN);
  const auto counts = factor_counts(two, 6);
  REQUIRE(counts.size() == 2);
  CHECK(counts[0].count == 6);
  CHECK(counts[1].count == 4);
}

TEST_CASE("spec validation") {
  CHECK(kind_of([] { spec_of("A2", {{Weight{-1, 0}, 1}}).validate(); }) == ErrorKind::NotDominant);
  CHECK(kind_of([] { spec_of("A2", {{Weight{1}, 1}}).validate(); }) != ErrorKind::Io);
  CHECK(kind_of([] { spec_of("A2", {{Weight{1, 0}, -1}}).validate(); }) != ErrorKind::Io);
  CHECK(kind_of([] { spec_of("A2", {}).validate(); }) != ErrorKind::Io);
}

TEST_CASE("xi measure of A1") {
  const auto xi = xi_measure(a1_fundamental(), 2);
  CHECK(as_map(xi) == std::map<Weight, mpq_class>{{Weight{-2}, mpq_class(1, 4)}, {Weight{0}, mpq_class(1, 2)},
                                                  {Weight{2}, mpq_class(1, 4)}});
  CHECK(xi.scale_squared() == 1);
  CHECK(xi.point(2) == std::vector<double>{2.0});
  CHECK(xi.kind == MeasureKind::xi);
}

TEST_CASE("eta measure of A1") {
  const auto spec = a1_fundamental();
  const auto eta2 = eta_measure(spec, 2);
  CHECK(as_map(eta2) == std::map<Weight, mpq_class>{{Weight{0}, mpq_class(1, 4)}, {Weight{2}, mpq_class(3, 4)}});
  const auto eta1 = eta_measure(spec, 1);
  CHECK(as_map(eta1) == std::map<Weight, mpq_class>{{Weight{1}, 1}});
  CHECK(eta1.scale_squared() == mpq_class(1, 2));
}

TEST_CASE("extended eta measure of A1 spreads mass over the shifted orbit") {
  const auto ext = eta_extended_measure(a1_fundamental(), 2);
  CHECK(ext.probability_at(Weight{2}) == mpq_class(3, 8));
  CHECK(ext.probability_at(Weight{-4}) == mpq_class(3, 8));
  CHECK(ext.probability_at(Weight{0}) == mpq_class(1, 8));
  CHECK(ext.probability_at(Weight{-2}) == mpq_class(1, 8));
  CHECK(ext.probability_at(Weight{-1}) == 0);
  CHECK(ext.total_mass() == 1);
}

TEST_CASE("pushforward of the extended measure recovers eta") {
  std::mt19937_64 rng(7);
  for (const auto& name : {"A1", "A2", "B2", "G2", "A3"}) {
    CAPTURE(name);
    const auto rs = rs_of(name);
    Weight lambda = random_dominant(rng, rs->rank(), 1);
    if (lambda == Weight::zero(rs->rank())) lambda[0] = 1;
    const TensorSpec spec{rs, {{lambda, 1}}};
    const unsigned long N = rs->rank() >= 3 ? 3 : 5;
    const auto eta = eta_measure(spec, N);
    const auto ext = eta_extended_measure(*rs, eta);
    CHECK(ext.total_mass() == 1);
    CHECK(ext.atoms.size() == eta.atoms.size() * rs->weyl.size());
    CHECK(pushforward_to_dominant(*rs, ext).atoms.size() == eta.atoms.size());
    CHECK(as_map(pushforward_to_dominant(*rs, ext)) == as_map(eta));
  }
}

TEST_CASE("measures are probability measures with centred xi") {
  std::mt19937_64 rng(8);
  for (const auto& name : {"A1", "A2", "B2", "C3", "G2"}) {
    CAPTURE(name);
    const auto rs = rs_of(name);
    TensorSpec s2{rs, {{Weight::zero(rs->rank()), 1}}};
    s2.factors[0].highest[0] = 1;
    s2.factors.push_back({random_dominant(rng, rs->rank(), 1), mpq_class(1, 2)});
    const auto xi = xi_measure(s2, 4);
    const auto eta = eta_measure(s2, 4);
    CHECK(xi.total_mass() == 1);
    CHECK(eta.total_mass() == 1);
    const auto moments = mixed_moments(xi, 2);
    for (const auto& [k, v] : moments) {
      int order = 0;
      for (int e : k) order += e;
      if (order == 0) CHECK(*v.exact == 1);
      if (order == 1) CHECK(v.value == 0.0);
    }
    for (const auto& a : eta.atoms) CHECK(a.weight.is_dominant());
  }
}

TEST_CASE("directional second moment of xi equals (t, t)") {
  std::mt19937_64 rng(9);
  for (const auto& name : {"A1", "A2", "B2", "G2", "C3"}) {
    CAPTURE(name);
    const auto rs = rs_of(name);
    TensorSpec spec{rs, {{random_dominant(rng, rs->rank(), 1), 1}}};
    if (spec.factors[0].highest == Weight::zero(rs->rank())) spec.factors[0].highest[0] = 1;
    const auto xi = xi_measure(spec, 4);
    for (int k = 0; k < 5; ++k) {
      const auto t = random_rational(rng, rs->rank(), k % 2 ? Basis::simple_root : Basis::fundamental);
      CHECK(directional_second_moment(*rs, xi, t) == inner_product(*rs, t, t));
    }
  }
}

TEST_CASE("mixed moments") {
  const auto xi = xi_measure(a1_fundamental(), 4);
  const auto m = mixed_moments(xi, 4);
  CHECK(*m.at({0}).exact == 1);
  // E[m^4] = 3N^2 - 2N = 40 for a sum of N = 4 signs, and the scale squared is 2
  CHECK(*m.at({4}).exact == 10);
  CHECK_FALSE(m.at({3}).exact.has_value());
  CHECK_THROWS_AS(mixed_moments(xi, 7), Error);
}

TEST_CASE("eta measure consistency check against the tensor dimension") {
  const auto spec = a1_fundamental();
  IrrepDecomposition wrong;
  wrong.components[Weight{2}] = 1;
  CHECK_THROWS_AS(eta_measure(spec, 2, wrong), Error);
}
