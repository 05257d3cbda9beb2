#include "ltl/measures.hpp"

#include <cmath>
#include <functional>

namespace ltl {

void TensorSpec::validate() const {
  if (!rs) throw Error(ErrorKind::InvalidInput, "tensor spec without root system");
  if (factors.empty()) throw Error(ErrorKind::InvalidInput, "tensor spec has no factors");
  for (const auto& f : factors) {
    if (f.highest.rank() != rs->rank())
      throw Error(ErrorKind::InvalidInput, "factor weight " + f.highest.to_string() + " has wrong rank for " +
                                               rs->cartan_type.name());
    if (!f.highest.is_dominant()) throw Error(ErrorKind::NotDominant, f.highest.to_string() + " is not dominant");
    if (f.tau <= 0) throw Error(ErrorKind::InvalidInput, "tau must be positive");
  }
}

std::string TensorSpec::describe() const {
  std::string s = rs ? rs->cartan_type.name() : "?";
  for (const auto& f : factors) {
    s += " ";
    for (std::size_t i = 0; i < f.highest.rank(); ++i) s += (i ? "," : "") + std::to_string(f.highest[i]);
    s += ":" + rational_to_string(f.tau);
  }
  return s;
}

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::xi: return "xi";
    case MeasureKind::eta: return "eta";
    case MeasureKind::eta_extended: return "eta-extended";
  }
  return "?";
}

double DiscreteMeasure::scale() const { return std::sqrt(scale_squared().get_d()); }

std::vector<double> DiscreteMeasure::point(std::size_t i) const {
  const double s = scale();
  std::vector<double> x;
  for (long c : atoms[i].weight.coords) x.push_back(static_cast<double>(c) / s);
  return x;
}

std::vector<double> DiscreteMeasure::probabilities() const {
  std::vector<double> p;
  p.reserve(atoms.size());
  for (const auto& a : atoms) p.push_back(a.prob.get_d());
  return p;
}

mpq_class DiscreteMeasure::total_mass() const {
  mpq_class s = 0;
  for (const auto& a : atoms) s += a.prob;
  return s;
}

mpq_class DiscreteMeasure::probability_at(const Weight& mu) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), mu,
                             [](const Atom& a, const Weight& w) { return a.weight < w; });
  if (it == atoms.end() || it->weight != mu) return 0;
  return it->prob;
}

mpq_class sigma_squared(const TensorSpec& spec, FormConvention convention) {
  spec.validate();
  mpq_class s = 0;
  for (const auto& f : spec.factors) s += f.tau * casimir_eigenvalue(*spec.rs, f.highest);
  s /= spec.rs->dim_g;
  if (convention == FormConvention::paper) s *= spec.rs->b_g;
  s.canonicalize();
  if (s == 0) throw Error(ErrorKind::DegenerateSpec, "all highest weights are zero; sigma = 0");
  return s;
}

bool admissible_N(const TensorSpec& spec, unsigned long N) {
  if (N == 0) return false;
  for (const auto& f : spec.factors) {
    mpq_class n = f.tau * N;
    n.canonicalize();
    if (n.get_den() != 1 || n < 0) return false;
  }
  return true;
}

std::vector<TensorFactor> factor_counts(const TensorSpec& spec, unsigned long N) {
  spec.validate();
  if (!admissible_N(spec, N))
    throw Error(ErrorKind::InadmissibleN, "tau_l * N is not an integer for N = " + std::to_string(N));
  std::vector<TensorFactor> out;
  for (const auto& f : spec.factors) {
    mpq_class n = f.tau * N;
    n.canonicalize();
    out.push_back(TensorFactor{f.highest, n.get_num().get_ui()});
  }
  return out;
}

MultiplicityMap tensor_power_for(const TensorSpec& spec, unsigned long N) {
  return tensor_power_multiplicities(*spec.rs, factor_counts(spec, N));
}

namespace {

mpz_class product_dimension(const TensorSpec& spec, unsigned long N) {
  mpz_class total = 1;
  for (const auto& f : factor_counts(spec, N)) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), weyl_dim(*spec.rs, f.highest).get_mpz_t(), f.count);
    total *= p;
  }
  return total;
}

DiscreteMeasure empty_measure(MeasureKind kind, const TensorSpec& spec, unsigned long N, FormConvention c) {
  DiscreteMeasure m;
  m.kind = kind;
  m.sigma2 = sigma_squared(spec, c);
  m.N = N;
  return m;
}

}  // namespace

DiscreteMeasure xi_measure(const TensorSpec& spec, unsigned long N, FormConvention convention) {
  return xi_measure(spec, N, tensor_power_for(spec, N), convention);
}

DiscreteMeasure xi_measure(const TensorSpec& spec, unsigned long N, const MultiplicityMap& power,
                           FormConvention convention) {
  factor_counts(spec, N);
  DiscreteMeasure m = empty_measure(MeasureKind::xi, spec, N, convention);
  const mpz_class& total = power.total_dim();
  m.atoms.reserve(power.size());
  for (const auto& [mu, v] : power) {
    mpq_class p(v, total);
    p.canonicalize();
    m.atoms.push_back(Atom{mu, std::move(p)});
  }
  return m;
}

DiscreteMeasure eta_measure(const TensorSpec& spec, unsigned long N, FormConvention convention) {
  return eta_measure(spec, N, racah_decompose(*spec.rs, tensor_power_for(spec, N)), convention);
}

DiscreteMeasure eta_measure(const TensorSpec& spec, unsigned long N, const IrrepDecomposition& decomposition,
                            FormConvention convention) {
  DiscreteMeasure m = empty_measure(MeasureKind::eta, spec, N, convention);
  const mpz_class total = product_dimension(spec, N);
  mpz_class check = 0;
  for (const auto& [mu, c] : decomposition.components) {
    const mpz_class mass = c * weyl_dim(*spec.rs, mu);
    check += mass;
    mpq_class p(mass, total);
    p.canonicalize();
    m.atoms.push_back(Atom{mu, std::move(p)});
  }
  if (check != total)
    throw Error(ErrorKind::InvalidInput, "decomposition dimension " + check.get_str() +
                                             " does not match tensor product dimension " + total.get_str());
  return m;
}

DiscreteMeasure eta_extended_measure(const TensorSpec& spec, unsigned long N, FormConvention convention) {
  return eta_extended_measure(*spec.rs, eta_measure(spec, N, convention));
}

DiscreteMeasure eta_extended_measure(const RootSystemData& rs, const DiscreteMeasure& eta) {
  std::map<Weight, mpq_class> spread;
  const mpq_class share(1, rs.weyl.size());
  for (const auto& a : eta.atoms) {
    if (!a.weight.is_dominant()) throw Error(ErrorKind::NotDominant, "eta atom " + a.weight.to_string());
    for (const auto& w : rs.weyl) {
      auto [it, inserted] = spread.emplace(shifted_action(rs, w, a.weight), a.prob * share);
      if (!inserted) throw Error(ErrorKind::InvalidInput, "shifted orbits overlap at " + it->first.to_string());
    }
  }
  DiscreteMeasure m;
  m.kind = MeasureKind::eta_extended;
  m.sigma2 = eta.sigma2;
  m.N = eta.N;
  m.atoms.reserve(spread.size());
  for (auto& [w, p] : spread) {
    p.canonicalize();
    m.atoms.push_back(Atom{w, p});
  }
  return m;
}

DiscreteMeasure pushforward_to_dominant(const RootSystemData& rs, const DiscreteMeasure& m) {
  std::map<Weight, mpq_class> acc;
  for (const auto& a : m.atoms) {
    const auto dom = to_dominant_shifted(rs, a.weight);
    if (!dom) {
      if (a.prob != 0) throw Error(ErrorKind::InvalidInput, "wall point " + a.weight.to_string() + " carries mass");
      continue;
    }
    acc[dom->dominant] += a.prob;
  }
  DiscreteMeasure out;
  out.kind = MeasureKind::eta;
  out.sigma2 = m.sigma2;
  out.N = m.N;
  for (auto& [w, p] : acc) {
    if (p == 0) continue;
    p.canonicalize();
    out.atoms.push_back(Atom{w, p});
  }
  return out;
}

namespace {

void enumerate_indices(std::size_t rank, int max_order, std::vector<MultiIndex>& out) {
  MultiIndex cur(rank, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == rank) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[k] = e;
      rec(k + 1, left - e);
    }
    cur[k] = 0;
  };
  rec(0, max_order);
}

}  // namespace

std::map<MultiIndex, MomentValue> mixed_moments(const DiscreteMeasure& m, int max_order) {
  if (max_order < 0 || max_order > 6) throw Error(ErrorKind::InvalidInput, "moment order must be in [0, 6]");
  const std::size_t r = m.rank();
  std::vector<MultiIndex> indices;
  enumerate_indices(r, max_order, indices);

  std::map<MultiIndex, MomentValue> out;
  const mpq_class s2 = m.scale_squared();
  const double s = std::sqrt(s2.get_d());
  for (const auto& k : indices) {
    MomentValue v;
    v.coefficient = 0;
    for (const auto& a : m.atoms) {
      mpz_class mono = 1;
      for (std::size_t i = 0; i < r; ++i) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), mpz_class(a.weight[i]).get_mpz_t(), static_cast<unsigned long>(k[i]));
        mono *= p;
      }
      v.coefficient += a.prob * mono;
    }
    v.coefficient.canonicalize();
    for (int e : k) v.order += e;
    if (v.order % 2 == 0) {
      mpq_class denom = 1;
      for (int i = 0; i < v.order / 2; ++i) denom *= s2;
      mpq_class exact = v.coefficient / denom;
      exact.canonicalize();
      v.exact = exact;
      v.value = exact.get_d();
    } else {
      v.value = v.coefficient.get_d() / std::pow(s, v.order);
    }
    out.emplace(k, std::move(v));
  }
  return out;
}

mpq_class directional_second_moment(const RootSystemData& rs, const DiscreteMeasure& m, const RationalVector& t) {
  const auto g = pairing_with_fundamental(rs, t);
  mpq_class acc = 0;
  for (const auto& a : m.atoms) {
    mpq_class tm = 0;
    for (std::size_t i = 0; i < g.size(); ++i) tm += g[i] * a.weight[i];
    acc += a.prob * tm * tm;
  }
  acc /= m.scale_squared();
  acc.canonicalize();
  return acc;
}

}  // namespace ltl
