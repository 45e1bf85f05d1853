// Command line front end: adiabatic demagnetization runs, phase boundaries,
// multi-N sweeps and Hamiltonian dumps, driven by a JSON config file with
// flag overrides. Every run writes one self-describing CSV ('#' metadata
// lines, fixed 12-digit formatting, atomic temp-file + rename), so identical
// configs give byte-identical output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adchain/entanglement.hpp"
#include "adchain/errors.hpp"
#include "adchain/hamiltonian.hpp"
#include "adchain/isentrope.hpp"
#include "adchain/thermo.hpp"

namespace {

using json = nlohmann::json;
using namespace adchain;

struct Probe {
  std::string name;
  double omega0 = 0.0;
  double beta = 0.0;
};

struct RunConfig {
  int n_spins = 2;
  double theta = std::numbers::pi / 2;
  double phi = 0.0;
  double beta_init = 0.0;
  double omega0_init = 40.0;
  double omega0_final = 0.01;
  int grid_points = 400;
  GridSpacing spacing = GridSpacing::logarithmic;
  std::vector<SpinPair> pairs{SpinPair(1, 2)};
  std::string output_path;    // empty: <command>.csv
  std::vector<int> n_list;    // sweep only; empty: {n_spins}
  std::vector<Probe> probes;  // boundary only
  double beta_max = 100.0;    // boundary search ceiling
};

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* spacing_name(GridSpacing s) {
  return s == GridSpacing::linear ? "linear" : "log";
}

json config_json(const RunConfig& cfg) {
  json pairs = json::array();
  for (const SpinPair& p : cfg.pairs) pairs.push_back({p.m, p.n});
  json probes = json::array();
  for (const Probe& p : cfg.probes)
    probes.push_back({{"name", p.name}, {"omega0", p.omega0}, {"beta", p.beta}});
  return json{{"n_spins", cfg.n_spins},
              {"theta", cfg.theta},
              {"phi", cfg.phi},
              {"beta_init", cfg.beta_init},
              {"omega0_init", cfg.omega0_init},
              {"omega0_final", cfg.omega0_final},
              {"grid_points", cfg.grid_points},
              {"grid_spacing", spacing_name(cfg.spacing)},
              {"pairs", pairs},
              {"output_path", cfg.output_path},
              {"n_list", cfg.n_list},
              {"probes", probes},
              {"beta_max", cfg.beta_max}};
}

SpinPair pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParameterError("config: each pair must be a two-element array [m, n]");
  return SpinPair(j.at(0).get<int>(), j.at(1).get<int>());
}

void load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ParameterError("config: top level must be a JSON object");

  static const std::set<std::string> known{
      "n_spins", "theta",       "phi",         "beta_init", "omega0_init",
      "omega0_final", "grid_points", "grid_spacing", "pairs",     "output_path",
      "n_list",  "probes",      "beta_max"};
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw ParameterError("config: unknown key '" + item.key() + "'");

  try {
    if (j.contains("n_spins")) cfg.n_spins = j.at("n_spins").get<int>();
    if (j.contains("theta")) cfg.theta = j.at("theta").get<double>();
    if (j.contains("phi")) cfg.phi = j.at("phi").get<double>();
    if (j.contains("beta_init")) cfg.beta_init = j.at("beta_init").get<double>();
    if (j.contains("omega0_init")) cfg.omega0_init = j.at("omega0_init").get<double>();
    if (j.contains("omega0_final")) cfg.omega0_final = j.at("omega0_final").get<double>();
    if (j.contains("grid_points")) cfg.grid_points = j.at("grid_points").get<int>();
    if (j.contains("grid_spacing")) {
      const std::string s = j.at("grid_spacing").get<std::string>();
      if (s == "linear")
        cfg.spacing = GridSpacing::linear;
      else if (s == "log")
        cfg.spacing = GridSpacing::logarithmic;
      else
        throw ParameterError("config: grid_spacing must be 'linear' or 'log'");
    }
    if (j.contains("pairs")) {
      cfg.pairs.clear();
      for (const json& p : j.at("pairs")) cfg.pairs.push_back(pair_from_json(p));
    }
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("n_list")) cfg.n_list = j.at("n_list").get<std::vector<int>>();
    if (j.contains("probes")) {
      cfg.probes.clear();
      for (const json& p : j.at("probes")) {
        Probe probe;
        probe.name = p.value("name", "");
        probe.omega0 = p.at("omega0").get<double>();
        probe.beta = p.at("beta").get<double>();
        cfg.probes.push_back(probe);
      }
    }
    if (j.contains("beta_max")) cfg.beta_max = j.at("beta_max").get<double>();
  } catch (const json::exception& e) {
    throw ParameterError("config: " + std::string(e.what()));
  }
}

std::vector<SpinPair> parse_pairs_flag(const std::string& arg) {
  std::vector<SpinPair> pairs;
  std::size_t pos = 0;
  while (pos <= arg.size()) {
    const std::size_t comma = std::min(arg.find(',', pos), arg.size());
    const std::string token = arg.substr(pos, comma - pos);
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos)
      throw ParameterError("--pairs expects m:n[,m:n...], got '" + token + "'");
    try {
      std::size_t used_m = 0, used_n = 0;
      const int m = std::stoi(token.substr(0, colon), &used_m);
      const int n = std::stoi(token.substr(colon + 1), &used_n);
      if (used_m != colon || used_n != token.size() - colon - 1)
        throw ParameterError("--pairs expects m:n[,m:n...], got '" + token + "'");
      pairs.emplace_back(m, n);
    } catch (const std::logic_error&) {
      throw ParameterError("--pairs expects m:n[,m:n...], got '" + token + "'");
    }
    pos = comma + 1;
  }
  return pairs;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("writing " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_header(const std::vector<SpinPair>& pairs, bool with_n_spins) {
  std::string h = with_n_spins ? "n_spins," : "";
  h += "omega0,beta,entropy,heat_capacity_per_spin,polarization";
  for (const SpinPair& p : pairs)
    h += ",C_" + std::to_string(p.m) + "_" + std::to_string(p.n);
  return h + "\n";
}

std::string csv_row(const TrajectoryPoint& pt, int n_spins) {
  std::string row = fmt(pt.omega0) + "," + fmt(pt.beta) + "," + fmt(pt.entropy) + "," +
                    fmt(pt.heat_capacity / n_spins) + "," + fmt(pt.polarization);
  for (double c : pt.concurrence) row += "," + fmt(c);
  return row + "\n";
}

std::filesystem::path script_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  return p.replace_extension(".gp");
}

std::string plot_preamble(const std::filesystem::path& csv, bool log_axis) {
  std::string s = "# gnuplot script; render with: gnuplot " + script_path(csv).string() + "\n";
  s += "set datafile separator comma\n";
  s += "set key autotitle columnhead\n";
  if (log_axis) s += "set logscale x\n";
  s += "set xlabel 'omega_0 / D_{12}'\n";
  s += "set terminal pngcairo size 960,640\n";
  s += "set output '" + std::filesystem::path(csv).replace_extension(".png").string() + "'\n";
  return s;
}

void write_plot_script(const std::filesystem::path& csv, const RunConfig& cfg,
                       const std::string& command) {
  const bool log_axis = cfg.spacing == GridSpacing::logarithmic;
  std::string s = plot_preamble(csv, log_axis);
  const std::string file = "'" + csv.string() + "'";
  if (command == "boundary") {
    s += "set datafile missing ''\n";
    s += "set ylabel 'beta^*'\n";
    s += "plot " + file + " using 1:2 with linespoints\n";
  } else if (command == "sweep") {
    s += "set cblabel 'n_{spins}'\n";
    s += "plot " + file + " using 2:3:1 with lines palette title 'beta'";
    for (std::size_t i = 0; i < cfg.pairs.size(); ++i)
      s += ", \\\n     " + file + " using 2:" + std::to_string(7 + i) + ":1 with lines palette";
    s += "\n";
  } else {
    s += "plot " + file + " using 1:2 with lines";
    for (std::size_t i = 0; i < cfg.pairs.size(); ++i)
      s += ", \\\n     " + file + " using 1:" + std::to_string(6 + i) + " with lines";
    s += "\n";
  }
  atomic_write(script_path(csv), s);
}

std::filesystem::path resolve_out(RunConfig& cfg, const std::string& command) {
  if (cfg.output_path.empty()) cfg.output_path = command + ".csv";
  return cfg.output_path;
}

void cmd_ad(RunConfig cfg, bool plot) {
  if (cfg.pairs.empty()) throw ParameterError("ad: pairs must be non-empty");
  const std::filesystem::path out = resolve_out(cfg, "ad");
  const ChainGeometry geom(cfg.n_spins, cfg.theta, cfg.phi);
  const ADSchedule sched = ADSchedule::make(cfg.omega0_init, cfg.beta_init,
                                            cfg.omega0_final, cfg.grid_points, cfg.spacing);
  const Trajectory traj = run_ad(geom, sched, cfg.pairs);

  std::string csv = "# adchain ad\n# config: " + config_json(cfg).dump() + "\n";
  csv += "# s_init: " + fmt(traj.s_init) + "\n";
  csv += csv_header(cfg.pairs, false);
  for (const TrajectoryPoint& pt : traj.points) csv += csv_row(pt, cfg.n_spins);
  if (traj.truncated)
    csv += "# truncated: entropy floor reached at omega0=" + fmt(*traj.truncated_at_omega0) +
           "\n";
  atomic_write(out, csv);
  if (plot) write_plot_script(out, cfg, "ad");
}

void cmd_boundary(RunConfig cfg, bool plot) {
  if (cfg.pairs.empty()) throw ParameterError("boundary: pairs must be non-empty");
  const std::filesystem::path out = resolve_out(cfg, "boundary");
  const ChainGeometry geom(cfg.n_spins, cfg.theta, cfg.phi);
  const SpinPair pair = cfg.pairs.front();
  const ADSchedule grid = ADSchedule::make(cfg.omega0_init, cfg.beta_init, cfg.omega0_final,
                                           cfg.grid_points, cfg.spacing);
  const std::vector<BoundaryPoint> boundary =
      phase_boundary(geom, pair, grid.omega0_grid, cfg.beta_max);

  std::string csv = "# adchain boundary\n# config: " + config_json(cfg).dump() + "\n";
  for (std::size_t i = 0; i < cfg.probes.size(); ++i) {
    const Probe& p = cfg.probes[i];
    const std::string name = p.name.empty() ? std::to_string(i + 1) : p.name;
    const bool entangled = thermal_concurrence(geom, p.omega0, p.beta, pair) > 0.0;
    csv += "# probe " + name + ": omega0=" + fmt(p.omega0) + " beta=" + fmt(p.beta) +
           " -> " + (entangled ? "entangled" : "separable") + "\n";
  }
  csv += "omega0,beta_star\n";
  for (const BoundaryPoint& bp : boundary) {
    csv += fmt(bp.omega0) + ",";
    if (bp.beta_star) csv += fmt(*bp.beta_star);
    csv += "\n";
  }
  atomic_write(out, csv);
  if (plot) write_plot_script(out, cfg, "boundary");
}

void cmd_sweep(RunConfig cfg, bool plot) {
  if (cfg.pairs.empty()) throw ParameterError("sweep: pairs must be non-empty");
  const std::filesystem::path out = resolve_out(cfg, "sweep");
  if (cfg.n_list.empty()) cfg.n_list = {cfg.n_spins};
  const ADSchedule sched = ADSchedule::make(cfg.omega0_init, cfg.beta_init,
                                            cfg.omega0_final, cfg.grid_points, cfg.spacing);

  std::string csv = "# adchain sweep\n# config: " + config_json(cfg).dump() + "\n";
  csv += csv_header(cfg.pairs, true);
  std::string trailer;
  for (int n : cfg.n_list) {
    const ChainGeometry geom(n, cfg.theta, cfg.phi);
    const Trajectory traj = run_ad(geom, sched, cfg.pairs);
    for (const TrajectoryPoint& pt : traj.points)
      csv += std::to_string(n) + "," + csv_row(pt, n);
    if (traj.truncated)
      trailer += "# truncated: n_spins=" + std::to_string(n) +
                 " entropy floor reached at omega0=" + fmt(*traj.truncated_at_omega0) + "\n";
  }
  csv += trailer;
  atomic_write(out, csv);
  if (plot) write_plot_script(out, cfg, "sweep");
}

std::string complex_entry(const std::complex<double>& z) {
  return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")";
}

std::string matrix_text(const Eigen::MatrixXcd& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      s += (j ? " " : "") + complex_entry(m(i, j));
    s += "\n";
  }
  return s;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

void cmd_hamiltonian(RunConfig cfg, bool as_json, bool to_file) {
  const ChainGeometry geom(cfg.n_spins, cfg.theta, cfg.phi);
  const FieldSpec field(cfg.omega0_init);
  const Eigen::MatrixXcd hz = build_hz(geom, field);
  const Eigen::MatrixXcd hdd = build_hdd(geom);
  const Spectrum spec = diagonalize(hz + hdd);
  const double h_loc = local_field(geom);
  const bool full = cfg.n_spins <= 4;

  std::string text;
  if (as_json) {
    json j{{"n_spins", cfg.n_spins}, {"theta", cfg.theta},   {"phi", cfg.phi},
           {"omega0", field.omega0}, {"h_loc", h_loc}};
    j["eigenvalues"] = std::vector<double>(
        spec.eigenvalues.data(), spec.eigenvalues.data() + spec.eigenvalues.size());
    if (full) {
      j["h_z"] = matrix_json(hz);
      j["h_dd"] = matrix_json(hdd);
    }
    text = j.dump(2) + "\n";
  } else {
    text = "n_spins: " + std::to_string(cfg.n_spins) + "\n";
    text += "theta: " + fmt(cfg.theta) + "\n";
    text += "phi: " + fmt(cfg.phi) + "\n";
    text += "omega0: " + fmt(field.omega0) + "\n";
    text += "h_loc: " + fmt(h_loc) + "\n";
    text += "eigenvalues:";
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
      text += " " + fmt(spec.eigenvalues(i));
    text += "\n";
    if (full) {
      text += "H_z:\n" + matrix_text(hz);
      text += "H_dd:\n" + matrix_text(hdd);
    } else {
      text += "H_z, H_dd: omitted (n_spins > 4)\n";
    }
  }

  if (to_file)
    atomic_write(cfg.output_path, text);
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-diagonalization experiments on a dipolar-coupled spin-1/2 chain"};
  app.require_subcommand(1);

  std::string config_path, out_path, pairs_arg;
  int grid_points = 0;
  bool plot_script = false, as_json = false;
  auto* config_opt = app.add_option("--config", config_path, "JSON config file");
  auto* out_opt = app.add_option("--out", out_path, "output path");
  auto* pairs_opt = app.add_option("--pairs", pairs_arg, "spin pairs m:n[,m:n...]");
  auto* grid_opt = app.add_option("--grid", grid_points, "field grid points");
  auto* log_opt = app.add_flag("--log", "logarithmic field grid");
  auto* linear_opt = app.add_flag("--linear", "linear field grid");
  log_opt->excludes(linear_opt);
  linear_opt->excludes(log_opt);
  app.add_flag("--plot-script", plot_script, "emit a gnuplot script next to the CSV");

  auto* ad = app.add_subcommand("ad", "isentropic demagnetization trajectory");
  auto* boundary = app.add_subcommand("boundary", "entangled/separable boundary beta*(omega0)");
  auto* sweep = app.add_subcommand("sweep", "ad trajectories for several chain lengths");
  auto* ham = app.add_subcommand("hamiltonian", "dump H_z, H_dd, spectrum and h_loc");
  for (auto* sub : {ad, boundary, sweep, ham}) sub->fallthrough();
  ham->add_flag("--json", as_json, "structured JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (config_opt->count()) load_config(config_path, cfg);
    if (out_opt->count()) cfg.output_path = out_path;
    if (pairs_opt->count()) cfg.pairs = parse_pairs_flag(pairs_arg);
    if (grid_opt->count()) cfg.grid_points = grid_points;
    if (log_opt->count()) cfg.spacing = GridSpacing::logarithmic;
    if (linear_opt->count()) cfg.spacing = GridSpacing::linear;

    if (ad->parsed())
      cmd_ad(cfg, plot_script);
    else if (boundary->parsed())
      cmd_boundary(cfg, plot_script);
    else if (sweep->parsed())
      cmd_sweep(cfg, plot_script);
    else
      cmd_hamiltonian(cfg, as_json, out_opt->count() > 0 || !cfg.output_path.empty());
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
