#include "ltl/repchar.hpp"

#include <algorithm>
#include <set>

#include "ltl/kernels.hpp"

namespace ltl {

MultiplicityMap MultiplicityMap::unit(std::size_t rank) {
  MultiplicityMap m(rank);
  m.add(Weight::zero(rank), 1);
  return m;
}

mpz_class MultiplicityMap::at(const Weight& mu) const {
  auto it = entries_.find(mu);
  return it == entries_.end() ? mpz_class(0) : it->second;
}

void MultiplicityMap::add(const Weight& mu, const mpz_class& delta) {
  if (delta == 0) return;
  if (mu.rank() != rank_) throw Error(ErrorKind::BasisMismatch, "weight rank differs from map rank");
  auto [it, inserted] = entries_.try_emplace(mu, delta);
  if (!inserted) {
    it->second += delta;
    if (it->second == 0) entries_.erase(it);
  }
  total_ += delta;
}

void MultiplicityMap::append_sorted(Weight mu, mpz_class value) {
  if (value == 0) return;
  total_ += value;
  entries_.emplace_hint(entries_.end(), std::move(mu), std::move(value));
}

void MultiplicityMap::add_scaled(const MultiplicityMap& other, const mpz_class& k) {
  if (k == 0) return;
  for (const auto& [mu, v] : other) add(mu, k * v);
}

namespace {

void require_dominant(const Weight& lambda) {
  if (!lambda.is_dominant()) throw Error(ErrorKind::NotDominant, lambda.to_string() + " is not dominant");
}

long height(const std::vector<long>& beta) {
  long h = 0;
  for (long b : beta) h += b;
  return h;
}

}  // namespace

mpz_class weyl_dim(const RootSystemData& rs, const Weight& lambda) {
  require_dominant(lambda);
  if (lambda.rank() != rs.rank()) throw Error(ErrorKind::BasisMismatch, "weight rank differs from root system rank");
  const Weight shifted = lambda + rs.rho;
  mpz_class num = 1, den = 1;
  for (const auto& alpha : rs.positive_roots_omega) {
    num *= rs.scaled_form(shifted, alpha);
    den *= rs.scaled_form(rs.rho, alpha);
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw Error(ErrorKind::InvalidInput, "Weyl dimension formula produced a non-integer");
  return num / den;
}

std::map<Weight, mpz_class> dominant_multiplicities(const RootSystemData& rs, const Weight& lambda) {
  require_dominant(lambda);
  if (lambda.rank() != rs.rank()) throw Error(ErrorKind::BasisMismatch, "weight rank differs from root system rank");

  // Dominant weights below lambda are connected through subtraction of positive roots.
  std::map<Weight, long> depth{{lambda, 0}};
  std::vector<Weight> queue{lambda};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const Weight mu = queue[k];
    const long d = depth[mu];
    for (std::size_t a = 0; a < rs.positive_roots.size(); ++a) {
      Weight nu = mu - rs.positive_roots_omega[a];
      if (!nu.is_dominant() || depth.count(nu)) continue;
      depth.emplace(nu, d + height(rs.positive_roots[a]));
      queue.push_back(std::move(nu));
    }
  }
  std::vector<std::pair<long, Weight>> order;
  for (const auto& [mu, d] : depth) order.emplace_back(d, mu);
  std::sort(order.begin(), order.end());

  const Weight lr = lambda + rs.rho;
  const long norm_top = rs.scaled_form(lr, lr);
  std::map<Weight, mpz_class> mult;
  mult.emplace(lambda, 1);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Weight& mu = order[k].second;
    mpz_class num = 0;
    for (const auto& alpha : rs.positive_roots_omega) {
      Weight up = mu;
      for (;;) {
        up += alpha;
        auto it = mult.find(dominant_representative(rs, up));
        if (it == mult.end()) break;
        num += it->second * rs.scaled_form(up, alpha);
      }
    }
    num *= 2;
    const Weight mr = mu + rs.rho;
    const mpz_class den = norm_top - rs.scaled_form(mr, mr);
    if (den <= 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
      throw Error(ErrorKind::InvalidInput, "Freudenthal recursion produced a non-integer at " + mu.to_string());
    mult.emplace(mu, num / den);
  }
  return mult;
}

MultiplicityMap freudenthal_multiplicities(const RootSystemData& rs, const Weight& lambda) {
  MultiplicityMap out(rs.rank());
  for (const auto& [mu, m] : dominant_multiplicities(rs, lambda)) {
    std::set<Weight> orbit;
    for (const auto& w : rs.weyl) orbit.insert(w.apply(mu));
    for (const auto& nu : orbit) out.add(nu, m);
  }
  return out;
}

MultiplicityMap convolve(const MultiplicityMap& a, const MultiplicityMap& b) {
  return kernels::convolve_parallel(a, b);
}

MultiplicityMap convolution_power(const MultiplicityMap& a, unsigned long n) {
  MultiplicityMap result = MultiplicityMap::unit(a.rank());
  if (n == 0) return result;
  MultiplicityMap base = a;
  bool first = true;
  for (;;) {
    if (n & 1ul) {
      result = first ? base : convolve(result, base);
      first = false;
    }
    n >>= 1;
    if (n == 0) break;
    base = convolve(base, base);
  }
  return result;
}

MultiplicityMap tensor_power_multiplicities(const RootSystemData& rs,
                                            const std::vector<TensorFactor>& factors) {
  for (const auto& f : factors) require_dominant(f.highest);
  MultiplicityMap result = MultiplicityMap::unit(rs.rank());
  for (const auto& f : factors) {
    if (f.count == 0) continue;
    result = convolve(result, convolution_power(freudenthal_multiplicities(rs, f.highest), f.count));
  }
  return result;
}

IrrepDecomposition racah_decompose(const RootSystemData& rs, const MultiplicityMap& m) {
  std::vector<std::pair<Weight, int>> shifts;
  for (const auto& w : rs.weyl) shifts.emplace_back(rs.rho - w.apply(rs.rho), w.sign);

  IrrepDecomposition out;
  for (const auto& [mu, value] : m) {
    if (!mu.is_dominant()) continue;
    mpz_class c = 0;
    for (const auto& [shift, sign] : shifts) {
      const mpz_class v = m.at(mu + shift);
      if (sign > 0)
        c += v;
      else
        c -= v;
    }
    if (c < 0)
      throw Error(ErrorKind::NegativeMultiplicity,
                  "[V : V_" + mu.to_string() + "] = " + c.get_str() + "; input is not a character");
    if (c > 0) out.components.emplace(mu, std::move(c));
  }
  return out;
}

IrrepDecomposition peel_off_decompose(const RootSystemData& rs, const MultiplicityMap& m) {
  MultiplicityMap rest = m;
  IrrepDecomposition out;
  while (!rest.empty()) {
    const Weight* top = nullptr;
    long top_level = 0;
    for (const auto& [mu, v] : rest) {
      if (!mu.is_dominant()) continue;
      const long level = rs.scaled_form(mu, rs.rho);
      if (!top || level > top_level || (level == top_level && *top < mu)) {
        top = &mu;
        top_level = level;
      }
    }
    if (!top) throw Error(ErrorKind::NegativeMultiplicity, "remainder has no dominant weight; input is not a character");
    const Weight lambda = *top;
    const mpz_class c = rest.at(lambda);
    if (c < 0)
      throw Error(ErrorKind::NegativeMultiplicity,
                  "[V : V_" + lambda.to_string() + "] = " + c.get_str() + "; input is not a character");
    rest.add_scaled(freudenthal_multiplicities(rs, lambda), -c);
    out.components.emplace(lambda, c);
  }
  return out;
}

MultiplicityMap recompose(const RootSystemData& rs, const IrrepDecomposition& d) {
  MultiplicityMap out(rs.rank());
  for (const auto& [mu, c] : d.components) out.add_scaled(freudenthal_multiplicities(rs, mu), c);
  return out;
}

mpz_class decomposition_dimension(const RootSystemData& rs, const IrrepDecomposition& d) {
  mpz_class total = 0;
  for (const auto& [mu, c] : d.components) total += c * weyl_dim(rs, mu);
  return total;
}

TraceIdentity trace_identity_check(const RootSystemData& rs, const Weight& lambda,
                                   const RationalVector& t, FormConvention convention) {
  require_dominant(lambda);
  const std::size_t r = rs.rank();
  const std::vector<mpq_class> g = pairing_with_fundamental(rs, t);
  TraceIdentity out;
  out.lhs = 0;
  for (const auto& [mu, m] : freudenthal_multiplicities(rs, lambda)) {
    mpq_class tm = 0;
    for (std::size_t i = 0; i < r; ++i) tm += g[i] * mu[i];
    out.lhs += mpq_class(m) * tm * tm;
  }
  out.rhs = casimir_eigenvalue(rs, lambda) * mpq_class(weyl_dim(rs, lambda)) / rs.dim_g * inner_product(rs, t, t);
  if (convention == FormConvention::paper) out.rhs *= rs.b_g;
  out.rhs.canonicalize();
  return out;
}

}  // namespace ltl
