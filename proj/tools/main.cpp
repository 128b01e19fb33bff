// rydgate-cli: searches, analyses, CZ verification, noise sweeps and table checks.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "rydgate/design_u1.hpp"
#include "rydgate/design_u2.hpp"
#include "rydgate/io.hpp"
#include "rydgate/noise.hpp"
#include "rydgate/repro.hpp"
#include "rydgate/synth.hpp"
#include "rydgate/units.hpp"

using namespace rydgate;
using io::ConfigError;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;
constexpr const char* kWorkersEnv = "RYDGATE_WORKERS";

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out;
  int table = 0;
  int row = 1;
};

struct Run {
  std::string command;
  Json config;
  std::uint64_t seed = 1;
  int workers = 1;
  std::filesystem::path out;
};

// Flags beat the environment, which beats the config file.
Run resolve(const std::string& command, const Common& c) {
  Run r;
  r.command = command;
  r.config = c.config.empty() ? Json::object() : io::load_config(c.config);
  r.config["command"] = command;
  if (c.seed) r.config["seed"] = *c.seed;
  if (!r.config.contains("seed")) r.config["seed"] = 1;
  if (c.workers) {
    r.config["workers"] = *c.workers;
  } else if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long w = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || w < 1) throw ConfigError(kWorkersEnv, "expected a positive integer");
    r.config["workers"] = static_cast<int>(w);
  }
  if (!c.out.empty()) r.config["out"] = c.out;
  if (c.table > 0) r.config["design"] = {{"table", c.table}, {"row", c.row}};
  r.config = io::parse_config(r.config.dump());
  if (!r.config["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
  r.seed = r.config["seed"].get<std::uint64_t>();
  r.workers = r.config.value("workers", 1);
  if (r.workers < 1) throw ConfigError("workers", "must be at least 1");
  if (r.config.contains("out")) {
    if (!r.config["out"].is_string()) throw ConfigError("out", "expected a directory path");
    r.out = r.config["out"].get<std::string>();
  }
  return r;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// Writes each (name, text) pair plus a manifest into the run's output
// directory, or prints the first file to stdout when no directory is set.
void emit(const Run& r, const std::vector<std::pair<std::string, std::string>>& files) {
  if (r.out.empty()) {
    if (!files.empty()) std::cout << files.front().second;
    return;
  }
  std::filesystem::create_directories(r.out);
  std::vector<std::string> names;
  for (const auto& [name, text] : files) {
    write_file(r.out / name, text);
    names.push_back(name);
  }
  io::write_manifest(r.out, io::make_manifest(r.command, r.config, r.seed, r.workers, names));
  std::cerr << "wrote " << names.size() << " file(s) and manifest.json to " << r.out.string() << "\n";
}

std::string over_pi(double phi) {
  std::ostringstream os;
  os << std::setprecision(8) << phi / units::pi;
  return os.str();
}

std::string format_matrix(const ComplexMatrix& m) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  for (int i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (int j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      os << std::setw(10) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::setw(8) << std::abs(z.imag()) << "i";
      if (j + 1 < m.cols()) os << "   ";
    }
    os << "\n";
  }
  return os.str();
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

int cmd_search_u1(const Run& r) {
  const auto designs = search_u1(io::parse_search_u1(r.config));
  for (const auto& d : designs) {
    if (d.m[0] + d.m[1] + d.m[2] != 0) throw std::logic_error("search_u1 produced integers with nonzero sum");
  }
  std::ostringstream csv;
  io::write_u1_csv(csv, designs);
  emit(r, {{"search_u1.csv", csv.str()}});
  std::cerr << designs.size() << " design(s)\n";
  return kOk;
}

int cmd_search_u2(const Run& r) {
  const auto designs = search_u2(io::parse_search_u2(r.config));
  std::ostringstream csv;
  io::write_u2_csv(csv, designs);
  emit(r, {{"search_u2.csv", csv.str()}});
  std::cerr << designs.size() << " design(s)\n";
  return kOk;
}

int cmd_analyze(const Run& r) {
  const io::DesignInput in = io::parse_design(r.config);
  std::ostringstream os;
  Json report;
  os << std::setprecision(10);
  if (in.kind == io::DesignInput::Kind::u1) {
    const GateDesignU1& d = in.u1;
    const auto res = resonance_residuals(d);
    const ComplexMatrix u = gate_matrix_u1(d);
    os << "U1 design\n"
       << "  Omega/2pi = " << units::to_mhz(std::abs(d.laser.rabi)) << " MHz, Delta/2pi = "
       << units::to_mhz(d.laser.detuning) << " MHz, V/2pi = " << units::to_mhz(d.interaction.v)
       << " MHz, N = " << d.n << "\n"
       << "  M = (" << d.m[0] << ", " << d.m[1] << ", " << d.m[2] << ")\n"
       << "  residuals (cycles) = (" << res[0] << ", " << res[1] << ", " << res[2] << ")\n"
       << "  t_g = " << units::to_ns(d.gate_time) << " ns\n"
       << "  alpha/pi = " << over_pi(d.alpha) << "\n"
       << "  beta/pi (closed form) = " << over_pi(reduce_angle(d.beta)) << "\n"
       << "  beta/pi (propagated) = " << over_pi(reduce_angle(d.beta_gate)) << "\n"
       << "  (beta-2alpha)/pi mod 2 = " << over_pi(wrap_positive(d.beta_gate - 2.0 * d.alpha)) << "\n"
       << "  E_ro = " << d.e_ro << "\n"
       << "  E_de = " << units::to_ns(d.e_de_per_tau) << " ns / tau\n"
       << "  distance to diag(1, e^ia, e^ia, e^ib) = " << gate_distance(u, u1_ideal(d.alpha, d.beta_gate)) << "\n"
       << "  gate matrix on |00>, |01>, |10>, |11>:\n"
       << format_matrix(u);
    report = {{"type", "u1"},
              {"M", d.m},
              {"residuals_cycles", res},
              {"tg_ns", units::to_ns(d.gate_time)},
              {"alpha_over_pi", d.alpha / units::pi},
              {"beta_closed_over_pi", reduce_angle(d.beta) / units::pi},
              {"beta_over_pi", reduce_angle(d.beta_gate) / units::pi},
              {"beta_minus_2alpha_over_pi", wrap_positive(d.beta_gate - 2.0 * d.alpha) / units::pi},
              {"e_ro", d.e_ro},
              {"e_de_ns_per_tau", units::to_ns(d.e_de_per_tau)},
              {"matrix", matrix_json(u)}};
  } else {
    const GateDesignU2& d = in.u2;
    const ComplexMatrix u = gate_matrix_u2(d);
    const double combo = wrap_positive(d.beta - d.alpha - d.gamma);
    const double offset = std::min(std::abs(reduce_angle(combo - units::pi / 2)), std::abs(reduce_angle(combo + units::pi / 2)));
    os << "U2 design\n"
       << "  control: Omega/2pi = " << units::to_mhz(std::abs(d.control.rabi))
       << " MHz, Delta/2pi = " << units::to_mhz(d.control.detuning) << " MHz, N_c = " << d.n_c << "\n"
       << "  target:  Omega/2pi = " << units::to_mhz(std::abs(d.target.rabi))
       << " MHz, Delta/2pi = " << units::to_mhz(d.target.detuning) << " MHz, N_t = " << d.n_t << "\n"
       << "  V/2pi = " << units::to_mhz(d.interaction.v) << " MHz\n"
       << "  t_c = " << units::to_ns(d.t_c) << " ns, t_t = " << units::to_ns(d.t_t) << " ns\n"
       << "  alpha/pi = " << over_pi(d.alpha) << ", gamma/pi = " << over_pi(d.gamma)
       << ", beta/pi = " << over_pi(reduce_angle(d.beta)) << (d.beta_reliable ? "" : " (|<11|U|11>| < 0.9)") << "\n"
       << "  (beta-alpha-gamma)/pi mod 2 = " << over_pi(combo) << ", offset from +-1/2 = " << over_pi(offset) << "\n"
       << "  E_ro = " << d.e_ro << "\n"
       << "  E_de = " << units::to_ns(d.e_de_per_tau) << " ns / tau\n"
       << "  gate matrix on |00>, |01>, |10>, |11>:\n"
       << format_matrix(u);
    report = {{"type", "u2"},
              {"tc_ns", units::to_ns(d.t_c)},
              {"tt_ns", units::to_ns(d.t_t)},
              {"alpha_over_pi", d.alpha / units::pi},
              {"gamma_over_pi", d.gamma / units::pi},
              {"beta_over_pi", reduce_angle(d.beta) / units::pi},
              {"beta_minus_alpha_minus_gamma_over_pi", combo / units::pi},
              {"beta_reliable", d.beta_reliable},
              {"e_ro", d.e_ro},
              {"e_de_ns_per_tau", units::to_ns(d.e_de_per_tau)},
              {"matrix", matrix_json(u)}};
  }
  std::cout << os.str();
  if (!r.out.empty()) emit(r, {{"analyze.txt", os.str()}, {"analyze.json", report.dump(2) + "\n"}});
  return kOk;
}

std::string axis_text(const Axis& a) {
  std::ostringstream os;
  os << std::setprecision(8) << "(" << a.x() << ", " << a.y() << ", " << a.z() << ")";
  return os.str();
}

int cmd_cz_verify(const Run& r) {
  const io::DesignInput in = io::parse_design(r.config);
  const double tol = io::parse_cz_tolerance(r.config);
  std::ostringstream os;
  os << std::setprecision(10);
  Json report;
  ComplexMatrix cz;
  if (in.kind == io::DesignInput::Kind::u1) {
    const GateDesignU1& d = in.u1;
    const CzComposite c = compose_cz_u1_detailed(gate_matrix_u1(d), d.alpha, d.beta_gate);
    cz = c.unitary;
    const AbSolution& s = c.solution;
    os << "CZ from U1 (" << c.u1_uses << " uses, " << (s.regime == CzRegime::four_u1 ? "four-U1" : "two-U1")
       << " path)\n"
       << "  theta1/pi = " << over_pi(s.theta1) << ", theta2/pi = " << over_pi(s.theta2)
       << ", theta3/pi = " << over_pi(s.theta3) << "\n"
       << "  a = " << s.a << ", n2 = " << axis_text(s.n2) << ", n12 = " << axis_text(s.n12) << "\n"
       << "  sequence (time order):\n";
    for (const auto& step : c.steps) os << "    " << step << "\n";
    report = {{"type", "u1"},
              {"u1_uses", c.u1_uses},
              {"theta_over_pi", {s.theta1 / units::pi, s.theta2 / units::pi, s.theta3 / units::pi}},
              {"steps", c.steps}};
  } else {
    const GateDesignU2& d = in.u2;
    cz = compose_cz_u2(gate_matrix_u2(d), d.alpha, d.gamma);
    const std::vector<std::string> steps = {"U2", "U2", "P(" + over_pi(-2.0 * d.alpha) + " pi) on control",
                                            "P(" + over_pi(-2.0 * d.gamma) + " pi) on target"};
    os << "CZ from U2 (2 uses)\n  sequence (time order):\n";
    for (const auto& step : steps) os << "    " << step << "\n";
    report = {{"type", "u2"}, {"u2_uses", 2}, {"steps", steps}};
  }
  const double dist = gate_distance(cz, cz_matrix());
  const double dist_cnot = gate_distance(cz_to_cnot(cz), cnot_matrix());
  const bool pass = dist <= tol;
  os << "  distance to CZ = " << dist << " (tolerance " << tol << ")\n"
     << "  distance to CNOT after target conjugation = " << dist_cnot << "\n"
     << "  composite:\n"
     << format_matrix(cz) << (pass ? "PASS\n" : "FAIL\n");
  report["distance_cz"] = dist;
  report["distance_cnot"] = dist_cnot;
  report["tolerance"] = tol;
  report["pass"] = pass;
  report["matrix"] = matrix_json(cz);
  std::cout << os.str();
  if (!r.out.empty()) emit(r, {{"cz_verify.txt", os.str()}, {"cz_verify.json", report.dump(2) + "\n"}});
  return pass ? kOk : kFail;
}

int cmd_noise_sweep(const Run& r) {
  const io::SweepConfig sweep = io::parse_noise_sweep(r.config);
  std::vector<io::SweepRow> rows;
  for (DriftMode mode : sweep.modes) {
    for (double temp : sweep.temperatures) {
      NoiseScenario s = sweep.base;
      s.temperature = temp;
      s.drift_mode = mode;
      const FidelityEstimate e = noisy_gate_fidelity(s, sweep.design, sweep.options);
      std::cerr << std::setprecision(6) << "T = " << units::to_us(temp) << " uK, " << io::drift_mode_name(mode)
                << ": error " << e.mean << " [" << e.ci_low << ", " << e.ci_high << "]"
                << (e.flagged ? " (CI wider than tolerance)" : "") << "\n";
      rows.push_back({temp, mode, e});
    }
  }
  std::ostringstream csv;
  io::write_sweep_csv(csv, rows);
  std::vector<std::pair<std::string, std::string>> files = {{"noise_sweep.csv", csv.str()}};
  for (DriftMode mode : sweep.modes) {
    std::vector<double> x, y;
    for (const auto& row : rows) {
      if (row.mode != mode) continue;
      x.push_back(units::to_us(row.temperature));
      y.push_back(row.estimate.mean);
    }
    std::ostringstream dat;
    io::write_series(dat, x, y);
    files.push_back({"error_vs_temperature_" + io::drift_mode_name(mode) + ".dat", dat.str()});
  }
  emit(r, files);
  return kOk;
}

int cmd_table_repro(const Run& r, int which, bool residuals) {
  std::vector<repro::RowReport> rows;
  switch (which) {
    case 1: rows = repro::check_table1(residuals); break;
    case 2: rows = repro::check_table2(); break;
    case 3: rows = repro::check_table3(); break;
    default: throw ConfigError("--which", "expected 1, 2 or 3");
  }
  const bool pass = repro::all_pass(rows);
  const std::string text = repro::format_report(rows) + (pass ? "PASS\n" : "FAIL\n");
  std::cout << text;
  if (!r.out.empty()) emit(r, {{"table" + std::to_string(which) + ".txt", text}});
  return pass ? kOk : kFail;
}

void add_common(CLI::App* sub, Common& c, bool config_required, bool design_shortcut) {
  auto* opt = sub->add_option("--config", c.config, "JSON config file (a run manifest also works)");
  if (config_required && !design_shortcut) opt->required();
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--workers", c.workers, std::string("worker threads (overrides ") + kWorkersEnv + ")")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "output directory; a manifest is written next to the results");
  if (design_shortcut) {
    auto* table = sub->add_option("--table", c.table, "use a reference design instead of a config")->check(CLI::Range(1, 3));
    sub->add_option("--row", c.row, "row of --table")->needs(table);
    table->excludes(opt);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg blockade gate design and noise analysis"};
  app.set_version_flag("--version", RYDGATE_VERSION);
  app.require_subcommand(1);

  Common c;
  int which = 0;
  bool residuals = false;
  auto* s1 = app.add_subcommand("search-u1", "search equal-pulse (U1) designs");
  add_common(s1, c, true, false);
  auto* s2 = app.add_subcommand("search-u2", "search two-pulse (U2) designs");
  add_common(s2, c, true, false);
  auto* an = app.add_subcommand("analyze", "report angles, residuals, errors and the gate matrix of a design");
  add_common(an, c, true, true);
  auto* cz = app.add_subcommand("cz-verify", "compose a CZ from a design and report its distance");
  add_common(cz, c, true, true);
  auto* ns = app.add_subcommand("noise-sweep", "thermal-motion and phase-noise error sweep");
  add_common(ns, c, true, false);
  auto* tr = app.add_subcommand("table-repro", "check computed designs against the reference tables");
  add_common(tr, c, false, false);
  tr->add_option("--which", which, "table number")->required()->check(CLI::Range(1, 3));
  tr->add_flag("--residuals", residuals, "also require resonance residuals < 1e-6 cycles (table 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    if (an->parsed() || cz->parsed()) {
      if (c.config.empty() && c.table == 0) throw ConfigError("--config", "give a config file or --table/--row");
    }
    const Run r = resolve(command, c);
    if (s1->parsed()) return cmd_search_u1(r);
    if (s2->parsed()) return cmd_search_u2(r);
    if (an->parsed()) return cmd_analyze(r);
    if (cz->parsed()) return cmd_cz_verify(r);
    if (ns->parsed()) return cmd_noise_sweep(r);
    return cmd_table_repro(r, which, residuals);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
