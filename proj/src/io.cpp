#include "ltl/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ltl::io {

namespace {

json rational_matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json int_matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Weight weight_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "weight must be an integer array");
  std::vector<long> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error(ErrorKind::InvalidInput, "weight must be an integer array");
    c.push_back(v.get<long>());
  }
  return Weight(std::move(c));
}

mpz_class integer_from_json(const json& j) {
  if (!j.is_string()) throw Error(ErrorKind::InvalidInput, "big integers are stored as decimal strings");
  mpz_class z;
  if (z.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorKind::InvalidInput, "bad integer string");
  return z;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error(ErrorKind::InvalidInput, "cannot format double");
  return std::string(buf, end);
}

json to_json(const RootSystemData& rs) {
  json j;
  j["type"] = rs.cartan_type.name();
  j["rank"] = rs.rank();
  j["cartan"] = int_matrix_json(rs.cartan);
  json d = json::array();
  for (const auto& q : rs.symmetrizers) d.push_back(rational_to_string(q));
  j["symmetrizers"] = d;
  j["symmetrized_cartan"] = rational_matrix_json(rs.sym_cartan);
  j["positive_roots"] = rs.positive_roots;
  j["rho"] = rs.rho.coords;
  j["gram_omega"] = rational_matrix_json(rs.gram_omega);
  j["gram_omega_inv"] = rational_matrix_json(rs.gram_omega_inv);
  j["weyl_order"] = rs.weyl.size();
  json weyl = json::array();
  for (const auto& w : rs.weyl)
    weyl.push_back({{"matrix", int_matrix_json(w.matrix)}, {"sign", w.sign}, {"length", w.length}});
  j["weyl"] = weyl;
  j["b_g"] = rs.b_g;
  j["dim_g"] = rs.dim_g;
  return j;
}

json to_json(const MultiplicityMap& m) {
  json entries = json::array();
  for (const auto& [mu, v] : m) entries.push_back({{"weight", mu.coords}, {"mult", v.get_str()}});
  return {{"rank", m.rank()}, {"total_dim", m.total_dim().get_str()}, {"entries", entries}};
}

MultiplicityMap multiplicity_map_from_json(const json& j) {
  try {
    MultiplicityMap m(j.at("rank").get<std::size_t>());
    for (const auto& e : j.at("entries")) m.add(weight_from_json(e.at("weight")), integer_from_json(e.at("mult")));
    if (m.total_dim() != integer_from_json(j.at("total_dim")))
      throw Error(ErrorKind::InvalidInput, "total_dim does not match entries");
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("multiplicity map JSON: ") + e.what());
  }
}

json to_json(const RootSystemData& rs, const IrrepDecomposition& d) {
  json comps = json::array();
  for (const auto& [mu, c] : d.components)
    comps.push_back({{"weight", mu.coords}, {"mult", c.get_str()}, {"dim", weyl_dim(rs, mu).get_str()}});
  return {{"type", rs.cartan_type.name()}, {"components", comps}};
}

json to_json(const DiscreteMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms) atoms.push_back({{"weight", a.weight.coords}, {"prob", rational_to_string(a.prob)}});
  return {{"kind", to_string(m.kind)},
          {"sigma2", rational_to_string(m.sigma2)},
          {"N", m.N},
          {"scale", format_double(m.scale())},
          {"atoms", atoms}};
}

DiscreteMeasure measure_from_json(const json& j) {
  try {
    DiscreteMeasure m;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "xi")
      m.kind = MeasureKind::xi;
    else if (kind == "eta")
      m.kind = MeasureKind::eta;
    else if (kind == "eta-extended")
      m.kind = MeasureKind::eta_extended;
    else
      throw Error(ErrorKind::InvalidInput, "unknown measure kind '" + kind + "'");
    m.sigma2 = parse_rational(j.at("sigma2").get<std::string>());
    m.N = j.at("N").get<unsigned long>();
    for (const auto& a : j.at("atoms"))
      m.atoms.push_back(Atom{weight_from_json(a.at("weight")), parse_rational(a.at("prob").get<std::string>())});
    if (!std::is_sorted(m.atoms.begin(), m.atoms.end(), [](const Atom& x, const Atom& y) { return x.weight < y.weight; }))
      throw Error(ErrorKind::InvalidInput, "atoms must be sorted by weight");
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("measure JSON: ") + e.what());
  }
}

std::string measure_csv(const DiscreteMeasure& m) {
  std::ostringstream out;
  const std::size_t r = m.rank();
  for (std::size_t i = 0; i < r; ++i) out << "w" << i + 1 << ",";
  out << "numerator,denominator,prob";
  for (std::size_t i = 0; i < r; ++i) out << ",x" << i + 1;
  out << "\n";
  for (std::size_t k = 0; k < m.atoms.size(); ++k) {
    const auto& a = m.atoms[k];
    for (long c : a.weight.coords) out << c << ",";
    out << a.prob.get_num().get_str() << "," << a.prob.get_den().get_str() << "," << rational_to_string(a.prob);
    for (double x : m.point(k)) out << "," << format_double(x);
    out << "\n";
  }
  return out.str();
}

std::vector<Atom> atoms_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::InvalidInput, "empty CSV");
  std::size_t rank = 0;
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ','))
      if (!cell.empty() && cell[0] == 'w') ++rank;
  }
  std::vector<Atom> atoms;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < rank + 2) throw Error(ErrorKind::InvalidInput, "short CSV row: " + line);
    Atom a;
    for (std::size_t i = 0; i < rank; ++i) a.weight.coords.push_back(std::stol(cells[i]));
    a.prob = parse_rational(cells[rank] + "/" + cells[rank + 1]);
    atoms.push_back(std::move(a));
  }
  return atoms;
}

std::string decomposition_csv(const RootSystemData& rs, const IrrepDecomposition& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rs.rank(); ++i) out << "w" << i + 1 << ",";
  out << "mult,dim\n";
  for (const auto& [mu, c] : d.components) {
    for (long v : mu.coords) out << v << ",";
    out << c.get_str() << "," << weyl_dim(rs, mu).get_str() << "\n";
  }
  return out.str();
}

namespace {

std::string index_label(const MultiIndex& k) {
  std::string s = "m";
  for (int e : k) s += "_" + std::to_string(e);
  return s;
}

}  // namespace

std::string report_csv(const ConvergenceReport& r) {
  std::ostringstream out;
  out << "N,char_fn_sup_error,char_fn_scaled_error,histogram_tv";
  if (!r.rows.empty())
    for (const auto& [k, v] : r.rows.front().moment_errors) out << "," << index_label(k);
  out << "\n";
  for (const auto& row : r.rows) {
    out << row.N << "," << format_double(row.char_fn_sup_error) << "," << format_double(row.char_fn_scaled_error)
        << "," << format_double(row.histogram_tv);
    for (const auto& [k, v] : row.moment_errors) out << "," << format_double(v);
    out << "\n";
  }
  return out.str();
}

json to_json(const ConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json moments = json::object();
    for (const auto& [k, v] : row.moment_errors) moments[index_label(k)] = v;
    rows.push_back({{"N", row.N},
                    {"char_fn_sup_error", row.char_fn_sup_error},
                    {"char_fn_scaled_error", row.char_fn_scaled_error},
                    {"histogram_tv", row.histogram_tv},
                    {"moment_errors", moments}});
  }
  return {{"spec", r.spec},
          {"N_values", r.N_values},
          {"bins_per_axis", r.bins_per_axis},
          {"rows", rows},
          {"char_fn_monotone", r.char_fn_monotone},
          {"histogram_tv_monotone", r.histogram_tv_monotone}};
}

std::string cache_file_name(const RootSystemData& rs, const std::vector<TensorFactor>& factors) {
  std::string name = rs.cartan_type.name();
  for (const auto& f : factors) {
    name += "_";
    for (std::size_t i = 0; i < f.highest.rank(); ++i) name += (i ? "-" : "") + std::to_string(f.highest[i]);
    name += "x" + std::to_string(f.count);
  }
  return name + ".json";
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& p, const std::string& contents) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  // write-then-rename so concurrent readers never see a partial cache file
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp);
    out << contents;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, p);
}

MultiplicityMap cached_tensor_power(const TensorSpec& spec, unsigned long N,
                                    const std::optional<std::filesystem::path>& cache_dir) {
  const auto factors = factor_counts(spec, N);
  if (!cache_dir) return tensor_power_multiplicities(*spec.rs, factors);
  const auto path = *cache_dir / cache_file_name(*spec.rs, factors);
  if (std::filesystem::exists(path)) {
    try {
      return multiplicity_map_from_json(json::parse(read_file(path)));
    } catch (const std::exception&) {
      // unreadable cache entry: recompute and overwrite below
    }
  }
  MultiplicityMap m = tensor_power_multiplicities(*spec.rs, factors);
  write_file(path, to_json(m).dump());
  return m;
}

}  // namespace ltl::io
