#include "ltl/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ltl/convergence.hpp"
#include "ltl/densities.hpp"
#include "ltl/io.hpp"
#include "ltl/measures.hpp"

namespace ltl::cli {

namespace {

using io::json;

/// A failure tied to one configuration field; reported as "<field>: <what>".
struct FieldError : Error {
  FieldError(ErrorKind kind, std::string field, const std::string& what)
      : Error(kind, field + ": " + what), field_name(std::move(field)) {}
  std::string field_name;
};

enum class OutputFormat { json, csv };

struct ExperimentConfig {
  std::string cartan_type;
  std::vector<std::string> factors;  // "coords:tau" as on the command line
  std::vector<unsigned long> N_list;
  FormConvention convention = FormConvention::consistent;
  OutputFormat format = OutputFormat::json;
  std::optional<std::filesystem::path> cache_dir;
  bool plot = false;
};

/// Raw option values; empty means "not given on the command line".
struct RawOptions {
  std::string config_path;
  std::string type;
  std::vector<std::string> factors;
  std::string N;
  std::string convention;
  std::string format;
  std::string output;
  std::string cache_dir;
  std::string t_grid = "default";
  std::string kind;
  std::string point;
  std::size_t bins = kDefaultHistogramBins;
  std::size_t plot_cells = 100;
  std::size_t weyl_cap = kDefaultWeylCap;
  bool plot = false;
};

/// what() minus the leading "<kind>: " that Error prepends.
std::string message(const Error& e) {
  const std::string w = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  return w.starts_with(prefix) ? w.substr(prefix.size()) : w;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

long parse_long(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw FieldError(ErrorKind::InvalidInput, field, "'" + text + "' is not an integer");
  }
}

double parse_double(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw FieldError(ErrorKind::InvalidInput, field, "'" + text + "' is not a number");
  }
}

Weight parse_weight(const std::string& field, const std::string& text) {
  std::vector<long> coords;
  for (const auto& c : split(text, ',')) coords.push_back(parse_long(field, c));
  return Weight(std::move(coords));
}

SpecFactor parse_factor(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw FieldError(ErrorKind::InvalidInput, "--factor", "expected coords:tau, got '" + text + "'");
  SpecFactor f;
  f.highest = parse_weight("--factor", text.substr(0, colon));
  try {
    f.tau = parse_rational(text.substr(colon + 1));
  } catch (const Error&) {
    throw FieldError(ErrorKind::InvalidInput, "--factor", "bad multiplicity '" + text.substr(colon + 1) + "'");
  }
  return f;
}

std::vector<unsigned long> parse_N_list(const std::string& text) {
  std::vector<unsigned long> out;
  for (const auto& part : split(text, ',')) {
    const long v = parse_long("--N", part);
    if (v <= 0) throw FieldError(ErrorKind::InvalidInput, "--N", "N must be positive");
    out.push_back(static_cast<unsigned long>(v));
  }
  if (out.empty()) throw FieldError(ErrorKind::InvalidInput, "--N", "empty list");
  return out;
}

FormConvention parse_convention(const std::string& text) {
  if (text == "consistent") return FormConvention::consistent;
  if (text == "paper") return FormConvention::paper;
  throw FieldError(ErrorKind::InvalidInput, "--sigma-convention", "expected consistent or paper, got '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw FieldError(ErrorKind::InvalidInput, "--format", "expected json or csv, got '" + text + "'");
}

/// Config file first, then command-line flags on top, then LTL_CACHE_DIR as
/// the cache fallback.
ExperimentConfig load_config(const RawOptions& raw) {
  ExperimentConfig cfg;
  if (!raw.config_path.empty()) {
    json j;
    try {
      j = json::parse(io::read_file(raw.config_path));
    } catch (const json::exception& e) {
      throw FieldError(ErrorKind::InvalidInput, "--config", e.what());
    } catch (const Error& e) {
      throw FieldError(ErrorKind::InvalidInput, "--config", message(e));
    }
    if (!j.is_object()) throw FieldError(ErrorKind::InvalidInput, "--config", "top level must be an object");
    try {
      if (j.contains("type")) cfg.cartan_type = j["type"].get<std::string>();
      if (j.contains("factors"))
        for (const auto& f : j["factors"]) {
          std::string coords;
          for (const auto& c : f.at("weight")) coords += (coords.empty() ? "" : ",") + std::to_string(c.get<long>());
          const auto& tau = f.at("tau");
          cfg.factors.push_back(coords + ":" + (tau.is_string() ? tau.get<std::string>() : std::to_string(tau.get<long>())));
        }
      if (j.contains("N"))
        for (const auto& n : j["N"]) {
          const long v = n.get<long>();
          if (v <= 0) throw FieldError(ErrorKind::InvalidInput, "N", "N must be positive");
          cfg.N_list.push_back(static_cast<unsigned long>(v));
        }
      if (j.contains("sigma_convention")) cfg.convention = parse_convention(j["sigma_convention"].get<std::string>());
      if (j.contains("format")) cfg.format = parse_format(j["format"].get<std::string>());
      if (j.contains("cache_dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
      if (j.contains("plot")) cfg.plot = j["plot"].get<bool>();
    } catch (const json::exception& e) {
      throw FieldError(ErrorKind::InvalidInput, "--config", e.what());
    }
  }
  if (!raw.type.empty()) cfg.cartan_type = raw.type;
  if (!raw.factors.empty()) cfg.factors = raw.factors;
  if (!raw.N.empty()) cfg.N_list = parse_N_list(raw.N);
  if (!raw.convention.empty()) cfg.convention = parse_convention(raw.convention);
  if (!raw.format.empty()) cfg.format = parse_format(raw.format);
  if (!raw.cache_dir.empty()) cfg.cache_dir = raw.cache_dir;
  if (!cfg.cache_dir)
    if (const char* env = std::getenv("LTL_CACHE_DIR"); env && *env) cfg.cache_dir = env;
  cfg.plot = cfg.plot || raw.plot;
  return cfg;
}

std::shared_ptr<const RootSystemData> root_system_for(const std::string& type, std::size_t weyl_cap) {
  if (type.empty()) throw FieldError(ErrorKind::InvalidInput, "--type", "missing Cartan type");
  CartanType t;
  try {
    t = parse_cartan_type(type);
  } catch (const Error& e) {
    throw FieldError(e.kind(), "--type", message(e));
  }
  try {
    return make_root_system(t, weyl_cap);
  } catch (const Error& e) {
    throw FieldError(e.kind(), "--type", message(e));
  }
}

TensorSpec spec_for(const ExperimentConfig& cfg, std::size_t weyl_cap) {
  TensorSpec spec;
  spec.rs = root_system_for(cfg.cartan_type, weyl_cap);
  if (cfg.factors.empty()) throw FieldError(ErrorKind::InvalidInput, "--factor", "at least one factor is required");
  for (const auto& f : cfg.factors) spec.factors.push_back(parse_factor(f));
  try {
    spec.validate();
  } catch (const Error& e) {
    throw FieldError(e.kind(), "--factor", message(e));
  }
  if (cfg.N_list.empty()) throw FieldError(ErrorKind::InvalidInput, "--N", "missing N");
  for (auto N : cfg.N_list)
    if (!admissible_N(spec, N))
      throw FieldError(ErrorKind::InadmissibleN, "--N", "N = " + std::to_string(N) + " leaves a fractional tensor count");
  return spec;
}

unsigned long single_N(const ExperimentConfig& cfg) {
  if (cfg.N_list.size() != 1) throw FieldError(ErrorKind::InvalidInput, "--N", "this command takes exactly one N");
  return cfg.N_list.front();
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

  void write(const std::string& text) const {
    if (path_.empty())
      fallback_ << text;
    else
      io::write_file(path_, text);
  }

  std::string sibling(const std::string& suffix) const { return (path_.empty() ? std::string("ltl") : path_) + suffix; }

 private:
  std::string path_;
  std::ostream& fallback_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void cmd_rootsys_info(const RawOptions& raw, const Sink& sink) {
  const auto rs = root_system_for(raw.type, raw.weyl_cap);
  sink.write(dump(io::to_json(*rs)));
}

void cmd_measure(MeasureKind kind, const RawOptions& raw, const Sink& sink) {
  const auto cfg = load_config(raw);
  const auto spec = spec_for(cfg, raw.weyl_cap);
  const unsigned long N = single_N(cfg);
  const MultiplicityMap power = io::cached_tensor_power(spec, N, cfg.cache_dir);
  DiscreteMeasure m;
  if (kind == MeasureKind::xi) {
    m = xi_measure(spec, N, power, cfg.convention);
  } else {
    m = eta_measure(spec, N, racah_decompose(*spec.rs, power), cfg.convention);
    if (kind == MeasureKind::eta_extended) m = eta_extended_measure(*spec.rs, m);
  }
  sink.write(cfg.format == OutputFormat::json ? dump(io::to_json(m)) : io::measure_csv(m));
}

void cmd_decompose(const RawOptions& raw, const Sink& sink) {
  const auto cfg = load_config(raw);
  const auto spec = spec_for(cfg, raw.weyl_cap);
  const unsigned long N = single_N(cfg);
  const auto d = racah_decompose(*spec.rs, io::cached_tensor_power(spec, N, cfg.cache_dir));
  sink.write(cfg.format == OutputFormat::json ? dump(io::to_json(*spec.rs, d)) : io::decomposition_csv(*spec.rs, d));
}

DensityModel density_model_for(const RawOptions& raw) {
  const auto rs = root_system_for(raw.type, raw.weyl_cap);
  if (raw.kind.empty()) throw FieldError(ErrorKind::InvalidInput, "--kind", "missing density kind");
  DensityKind kind;
  try {
    kind = parse_density_kind(raw.kind);
  } catch (const Error& e) {
    throw FieldError(e.kind(), "--kind", message(e));
  }
  try {
    return DensityModel(rs, kind);
  } catch (const Error& e) {
    throw FieldError(e.kind(), "--kind", message(e));
  }
}

void cmd_density_eval(const RawOptions& raw, const Sink& sink) {
  const DensityModel model = density_model_for(raw);
  std::vector<double> x;
  for (const auto& c : split(raw.point, ',')) x.push_back(parse_double("--point", c));
  if (x.size() != model.rank())
    throw FieldError(ErrorKind::BasisMismatch, "--point", "expected " + std::to_string(model.rank()) + " coordinates");
  double value = 0;
  try {
    value = model(x);
  } catch (const Error& e) {
    throw FieldError(e.kind(), "--point", message(e));
  }
  json j{{"type", model.root_system().cartan_type.name()},
         {"kind", to_string(model.kind())},
         {"point", x},
         {"value", value}};
  sink.write(dump(j));
}

/// Writes "<output>.dat" with one sample per line and "<output>.gp" that plots it.
void cmd_density_plot(const RawOptions& raw, const Sink& sink, std::ostream& out) {
  const DensityModel model = density_model_for(raw);
  const std::size_t r = model.rank();
  if (r > 2) throw FieldError(ErrorKind::RankTooLarge, "--type", "plots are limited to rank 2");
  if (raw.plot_cells == 0) throw FieldError(ErrorKind::InvalidInput, "--cells", "must be positive");
  const auto grid = histogram_grid(model, raw.plot_cells);
  const std::string dat = sink.sibling(".dat");
  const std::string gp = sink.sibling(".gp");

  std::ostringstream data;
  const std::size_t n = raw.plot_cells;
  auto coord = [&](std::size_t axis, std::size_t k) {
    return grid.lo[axis] + (grid.hi[axis] - grid.lo[axis]) * static_cast<double>(k) / static_cast<double>(n);
  };
  if (r == 1) {
    for (std::size_t k = 0; k <= n; ++k) {
      const double x = coord(0, k);
      data << io::format_double(x) << " " << io::format_double(model.value_or_zero(std::span(&x, 1))) << "\n";
    }
  } else {
    for (std::size_t a = 0; a <= n; ++a) {
      for (std::size_t b = 0; b <= n; ++b) {
        const double x[2] = {coord(0, a), coord(1, b)};
        data << io::format_double(x[0]) << " " << io::format_double(x[1]) << " "
             << io::format_double(model.value_or_zero(x)) << "\n";
      }
      data << "\n";
    }
  }
  io::write_file(dat, data.str());

  const std::string name = model.root_system().cartan_type.name() + " " + to_string(model.kind());
  const std::string dat_name = std::filesystem::path(dat).filename().string();
  std::ostringstream script;
  script << "set terminal pngcairo size 800,600\n"
         << "set output '" << std::filesystem::path(sink.sibling(".png")).filename().string() << "'\n"
         << "set title '" << name << " density'\n"
         << "set xlabel 'x1'\n";
  if (r == 1) {
    script << "set ylabel 'density'\n"
           << "plot '" << dat_name << "' using 1:2 with lines title '" << name << "'\n";
  } else {
    script << "set ylabel 'x2'\n"
           << "set view map\nset pm3d map\n"
           << "splot '" << dat_name << "' using 1:2:3 with pm3d title '" << name << "'\n";
  }
  io::write_file(gp, script.str());
  out << dat << "\n" << gp << "\n";
}

TGrid parse_t_grid(const std::string& text, std::size_t rank) {
  if (text == "default") return default_t_grid(rank);
  TGrid grid;
  for (const auto& p : split(text, ';')) {
    std::vector<double> t;
    for (const auto& c : split(p, ',')) t.push_back(parse_double("--t-grid", c));
    if (t.size() != rank)
      throw FieldError(ErrorKind::BasisMismatch, "--t-grid", "point '" + p + "' needs " + std::to_string(rank) + " coordinates");
    grid.push_back(std::move(t));
  }
  return grid;
}

std::string report_plot_script(const std::string& data_file, const ConvergenceReport& r) {
  std::ostringstream s;
  s << "# data: " << data_file << "\n"
    << "set terminal pngcairo size 800,600\n"
    << "set output '" << data_file << ".png'\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set logscale xy\n"
    << "set xlabel 'N'\n"
    << "set title '" << r.spec << "'\n"
    << "plot '" << data_file << "' using 1:2 with linespoints, '' using 1:4 with linespoints\n";
  return s.str();
}

void cmd_converge(const RawOptions& raw, const Sink& sink, std::ostream& out) {
  const auto cfg = load_config(raw);
  const auto spec = spec_for(cfg, raw.weyl_cap);
  if (raw.bins == 0) throw FieldError(ErrorKind::InvalidInput, "--bins", "must be positive");
  const TGrid t_grid = parse_t_grid(raw.t_grid, spec.rs->rank());
  ReportOptions options;
  options.convention = cfg.convention;
  options.cache_dir = cfg.cache_dir;
  const auto report = convergence_report(spec, cfg.N_list, t_grid, raw.bins, options);
  const std::string csv = io::report_csv(report);
  sink.write(cfg.format == OutputFormat::json ? dump(io::to_json(report)) : csv);
  if (cfg.plot) {
    const std::string data = sink.sibling(".plot.csv");
    const std::string gp = sink.sibling(".gp");
    io::write_file(data, csv);
    io::write_file(gp, report_plot_script(std::filesystem::path(data).filename().string(), report));
    out << data << "\n" << gp << "\n";
  }
}

void add_spec_options(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--config", raw.config_path, "JSON experiment config; flags override its fields");
  cmd->add_option("--type", raw.type, "Cartan type, e.g. A2, B3, G2");
  cmd->add_option("--factor", raw.factors, "highest weight and multiplicity as coords:tau, e.g. 1,0:1")->take_all();
  cmd->add_option("--N", raw.N, "comma-separated list of N");
  cmd->add_option("--sigma-convention", raw.convention, "consistent (default) or paper");
  cmd->add_option("--format", raw.format, "json (default) or csv");
  cmd->add_option("--cache-dir", raw.cache_dir, "tensor-power cache directory (default: $LTL_CACHE_DIR)");
  cmd->add_flag("--plot", raw.plot, "also emit a gnuplot script");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WeylCapExceeded:
    case ErrorKind::RankTooLarge: return kExitCap;
    case ErrorKind::Io: return kExitIo;
    default: return kExitInvalid;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie-theoretic limit laws for tensor-power weight measures", "ltl"};
  app.require_subcommand(1);
  RawOptions raw;

  auto* rootsys = app.add_subcommand("rootsys", "root system data");
  rootsys->require_subcommand(1);
  auto* info = rootsys->add_subcommand("info", "Cartan matrix, roots, Weyl group as JSON");
  info->add_option("--type", raw.type, "Cartan type")->required();
  info->add_option("--weyl-cap", raw.weyl_cap, "maximum Weyl group order");
  info->add_option("--output", raw.output, "output file (default stdout)");

  auto* measure = app.add_subcommand("measure", "discrete measures xi(N), eta(N), eta^e(N)");
  measure->require_subcommand(1);
  std::vector<std::pair<CLI::App*, MeasureKind>> measure_cmds;
  for (auto [name, kind] : {std::pair{"xi", MeasureKind::xi}, std::pair{"eta", MeasureKind::eta},
                            std::pair{"eta-extended", MeasureKind::eta_extended}}) {
    auto* sub = measure->add_subcommand(name, std::string(name) + " measure");
    add_spec_options(sub, raw);
    sub->add_option("--output", raw.output, "output file (default stdout)");
    sub->add_option("--weyl-cap", raw.weyl_cap, "maximum Weyl group order");
    measure_cmds.emplace_back(sub, kind);
  }

  auto* decompose = app.add_subcommand("decompose", "irreducible decomposition of the tensor power");
  add_spec_options(decompose, raw);
  decompose->add_option("--output", raw.output, "output file (default stdout)");
  decompose->add_option("--weyl-cap", raw.weyl_cap, "maximum Weyl group order");

  auto* density = app.add_subcommand("density", "limiting densities");
  density->require_subcommand(1);
  auto* eval = density->add_subcommand("eval", "evaluate a density at one point");
  auto* plot = density->add_subcommand("plot", "write gnuplot data and script (rank <= 2)");
  for (auto* sub : {eval, plot}) {
    sub->add_option("--type", raw.type, "Cartan type")->required();
    sub->add_option("--kind", raw.kind, "xi, eta, eta-extended or gue")->required();
    sub->add_option("--weyl-cap", raw.weyl_cap, "maximum Weyl group order");
  }
  eval->add_option("--point", raw.point, "comma-separated fundamental-weight coordinates")->required();
  eval->add_option("--output", raw.output, "output file (default stdout)");
  plot->add_option("--output", raw.output, "output prefix for .dat and .gp")->required();
  plot->add_option("--cells", raw.plot_cells, "samples per axis");

  auto* converge = app.add_subcommand("converge", "convergence report over a list of N");
  add_spec_options(converge, raw);
  converge->add_option("--t-grid", raw.t_grid, "'default' or points 'a,b;c,d' in simple-root coordinates");
  converge->add_option("--bins", raw.bins, "histogram bins per axis");
  converge->add_option("--output", raw.output, "output file (default stdout)");
  converge->add_option("--weyl-cap", raw.weyl_cap, "maximum Weyl group order");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  const Sink sink(raw.output, out);
  try {
    if (info->parsed()) {
      cmd_rootsys_info(raw, sink);
    } else if (decompose->parsed()) {
      cmd_decompose(raw, sink);
    } else if (eval->parsed()) {
      cmd_density_eval(raw, sink);
    } else if (plot->parsed()) {
      cmd_density_plot(raw, sink, out);
    } else if (converge->parsed()) {
      cmd_converge(raw, sink, out);
    } else {
      for (const auto& [sub, kind] : measure_cmds)
        if (sub->parsed()) cmd_measure(kind, raw, sink);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: io: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace ltl::cli
