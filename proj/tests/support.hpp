#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ltl/rootsys.hpp"

namespace ltl::testing {

inline std::shared_ptr<const RootSystemData> rs_of(const std::string& name) {
  return make_root_system(parse_cartan_type(name));
}

/// Every supported type up to rank 4.
inline std::vector<std::string> small_types() {
  return {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D2", "D3", "D4", "G2", "F4"};
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline Weight random_dominant(std::mt19937_64& rng, std::size_t rank, long max_coord) {
  std::uniform_int_distribution<long> d(0, max_coord);
  Weight w = Weight::zero(rank);
  for (auto& c : w.coords) c = d(rng);
  return w;
}

inline RationalVector random_rational(std::mt19937_64& rng, std::size_t rank, Basis basis) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  RationalVector t;
  t.basis = basis;
  for (std::size_t i = 0; i < rank; ++i) {
    mpq_class q(mpz_class(num(rng)), mpz_class(den(rng)));
    q.canonicalize();
    t.coords.push_back(q);
  }
  return t;
}

}  // namespace ltl::testing
