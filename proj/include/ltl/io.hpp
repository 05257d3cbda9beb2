#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ltl/convergence.hpp"
#include "ltl/measures.hpp"
#include "ltl/repchar.hpp"

namespace ltl::io {

using nlohmann::json;

/// Rationals are written as "p/q" strings, big integers as decimal strings.
json to_json(const RootSystemData& rs);
json to_json(const MultiplicityMap& m);
json to_json(const RootSystemData& rs, const IrrepDecomposition& d);
json to_json(const DiscreteMeasure& m);
json to_json(const ConvergenceReport& r);

MultiplicityMap multiplicity_map_from_json(const json& j);
DiscreteMeasure measure_from_json(const json& j);

/// One atom per row: w_1..w_r, numerator, denominator, prob ("p/q"), x_1..x_r.
std::string measure_csv(const DiscreteMeasure& m);
/// Reads the leading weight/numerator/denominator columns back.
std::vector<Atom> atoms_from_csv(const std::string& text);

std::string decomposition_csv(const RootSystemData& rs, const IrrepDecomposition& d);
std::string report_csv(const ConvergenceReport& r);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// File name for the cached character of prod_l V_{lambda_l}^{(x) N_l}.
std::string cache_file_name(const RootSystemData& rs, const std::vector<TensorFactor>& factors);

/// Loads the tensor-power character from cache_dir when present, otherwise
/// computes it and (if cache_dir is set) writes it.
MultiplicityMap cached_tensor_power(const TensorSpec& spec, unsigned long N,
                                    const std::optional<std::filesystem::path>& cache_dir);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& contents);

}  // namespace ltl::io
