#include "rydgate/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rydgate/atomic.hpp"
#include "rydgate/repro.hpp"
#include "rydgate/units.hpp"

namespace rydgate::io {

namespace {

using units::mhz;

constexpr int kManifestVersion = 1;

const char* type_name(const Json& j) { return j.type_name(); }

// Typed, path-tracking view of one config object.
class Section {
 public:
  Section(const Json* j, std::string path) : j_(j), path_(std::move(path)) {
    if (j_ && !j_->is_null() && !j_->is_object()) {
      throw ConfigError(path_, std::string("expected an object, got ") + type_name(*j_));
    }
  }

  bool present() const { return j_ && j_->is_object(); }
  bool has(const std::string& key) const { return present() && j_->contains(key) && !(*j_)[key].is_null(); }
  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
  const Json& at(const std::string& k) const { return (*j_)[k]; }

  Section child(const std::string& k) const { return {has(k) ? &at(k) : nullptr, key(k)}; }

  void only(std::initializer_list<const char*> allowed) const {
    if (!present()) return;
    for (const auto& item : j_->items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || item.key() == a;
      if (!ok) throw ConfigError(key(item.key()), "unknown key");
    }
  }

  double number(const std::string& k, double def) const { return has(k) ? require_number(k) : def; }
  double require_number(const std::string& k) const {
    if (!has(k)) throw ConfigError(key(k), "missing required number");
    const Json& v = at(k);
    if (!v.is_number()) throw ConfigError(key(k), std::string("expected a number, got ") + type_name(v));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(key(k), "must be finite");
    return x;
  }
  double positive(const std::string& k, double def) const {
    const double x = number(k, def);
    if (!(x > 0.0)) throw ConfigError(key(k), "must be positive");
    return x;
  }

  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    const Json& v = at(k);
    if (!v.is_number_integer()) throw ConfigError(key(k), std::string("expected an integer, got ") + type_name(v));
    return v.get<int>();
  }

  bool boolean(const std::string& k, bool def) const {
    if (!has(k)) return def;
    const Json& v = at(k);
    if (!v.is_boolean()) throw ConfigError(key(k), std::string("expected true or false, got ") + type_name(v));
    return v.get<bool>();
  }

  std::string string(const std::string& k, const std::string& def) const {
    if (!has(k)) return def;
    const Json& v = at(k);
    if (!v.is_string()) throw ConfigError(key(k), std::string("expected a string, got ") + type_name(v));
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& k) const {
    if (!has(k)) throw ConfigError(key(k), "missing required list of numbers");
    const Json& v = at(k);
    if (!v.is_array()) throw ConfigError(key(k), std::string("expected a list of numbers, got ") + type_name(v));
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError(key(k) + "[" + std::to_string(i) + "]", std::string("expected a number, got ") + type_name(v[i]));
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  // [lo, hi]; lo > hi is allowed and denotes an empty range.
  std::pair<double, double> range(const std::string& k) const {
    const auto v = numbers(k);
    if (v.size() != 2) throw ConfigError(key(k), "expected [lo, hi]");
    return {v[0], v[1]};
  }

  // Integer range given as n or [n_min, n_max].
  std::pair<int, int> int_range(const std::string& k, int def) const {
    if (!has(k)) return {def, def};
    const Json& v = at(k);
    if (v.is_number_integer()) return {v.get<int>(), v.get<int>()};
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
      return {v[0].get<int>(), v[1].get<int>()};
    }
    throw ConfigError(key(k), "expected an integer or [min, max]");
  }

 private:
  const Json* j_;
  std::string path_;
};

Section root_of(const Json& config) {
  Section root(&config, "");
  root.only({"command", "seed", "workers", "out", "search_u1", "search_u2", "design", "noise", "cz"});
  return root;
}

std::uint64_t seed_of(const Section& root) {
  if (!root.has("seed")) return 1;
  const Json& v = root.at("seed");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError("seed", "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

int workers_of(const Section& root) {
  const int w = root.integer("workers", 1);
  if (w < 1) throw ConfigError("workers", "must be at least 1");
  return w;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
  os << "\n";
}

}  // namespace

Json parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "top level must be an object");
  if (j.contains("manifest_version")) {
    if (!j.contains("config") || !j["config"].is_object()) throw ConfigError("config", "manifest without a config object");
    j = j["config"];
  }
  root_of(j);
  return j;
}

Json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

SearchU1Options parse_search_u1(const Json& config) {
  const Section root = root_of(config);
  const Section s = root.child("search_u1");
  if (!s.present()) throw ConfigError("search_u1", "missing search block");
  s.only({"omega_mhz", "delta_mhz", "v_mhz", "n", "grid_step_mhz", "max_e_ro", "max_e_de_ns", "tol_cycles"});
  SearchU1Options opt;
  opt.omega = mhz(s.positive("omega_mhz", 10.0));
  const auto [dlo, dhi] = s.range("delta_mhz");
  const auto [vlo, vhi] = s.range("v_mhz");
  opt.delta_lo = mhz(dlo);
  opt.delta_hi = mhz(dhi);
  opt.v_lo = mhz(vlo);
  opt.v_hi = mhz(vhi);
  std::tie(opt.n_min, opt.n_max) = s.int_range("n", 1);
  if (opt.n_min < 1) throw ConfigError(s.key("n"), "must be at least 1");
  opt.grid_step = mhz(s.positive("grid_step_mhz", 0.05));
  opt.max_e_ro = s.number("max_e_ro", opt.max_e_ro);
  opt.max_e_de = units::ns(s.number("max_e_de_ns", units::to_ns(opt.max_e_de)));
  opt.tol_cycles = s.positive("tol_cycles", opt.tol_cycles);
  opt.workers = workers_of(root);
  return opt;
}

SearchU2Options parse_search_u2(const Json& config) {
  const Section root = root_of(config);
  const Section s = root.child("search_u2");
  if (!s.present()) throw ConfigError("search_u2", "missing search block");
  s.only({"omega_t_mhz", "omega_c_mhz", "delta_c_mhz", "delta_t_mhz", "v_mhz", "n_c", "n_t", "starts", "max_e_ro",
          "max_e_de_ns", "max_evals", "target_angles_over_pi", "weight_residual", "weight_deficit", "weight_angle"});
  SearchU2Options opt;
  opt.omega_t = mhz(s.positive("omega_t_mhz", 10.0));
  auto set_range = [&](const char* k, double& lo, double& hi) {
    const auto [a, b] = s.range(k);
    lo = mhz(a);
    hi = mhz(b);
  };
  set_range("omega_c_mhz", opt.omega_c_lo, opt.omega_c_hi);
  set_range("delta_c_mhz", opt.delta_c_lo, opt.delta_c_hi);
  set_range("delta_t_mhz", opt.delta_t_lo, opt.delta_t_hi);
  set_range("v_mhz", opt.v_lo, opt.v_hi);
  std::tie(opt.n_c_min, opt.n_c_max) = s.int_range("n_c", 1);
  std::tie(opt.n_t_min, opt.n_t_max) = s.int_range("n_t", 1);
  if (opt.n_c_min < 1) throw ConfigError(s.key("n_c"), "must be at least 1");
  if (opt.n_t_min < 1) throw ConfigError(s.key("n_t"), "must be at least 1");
  opt.starts = s.integer("starts", opt.starts);
  if (opt.starts < 1) throw ConfigError(s.key("starts"), "must be at least 1");
  opt.max_e_ro = s.number("max_e_ro", opt.max_e_ro);
  opt.max_e_de = units::ns(s.number("max_e_de_ns", units::to_ns(opt.max_e_de)));
  opt.max_evals = s.integer("max_evals", opt.max_evals);
  if (s.has("target_angles_over_pi")) {
    opt.target_angles.clear();
    for (double a : s.numbers("target_angles_over_pi")) opt.target_angles.push_back(a * units::pi);
  }
  opt.weight_residual = s.number("weight_residual", opt.weight_residual);
  opt.weight_deficit = s.number("weight_deficit", opt.weight_deficit);
  opt.weight_angle = s.number("weight_angle", opt.weight_angle);
  opt.seed = seed_of(root);
  opt.workers = workers_of(root);
  return opt;
}

DesignInput parse_design(const Json& config) {
  const Section root = root_of(config);
  const Section s = root.child("design");
  if (!s.present()) throw ConfigError("design", "missing design block");
  DesignInput out;
  if (s.has("table")) {
    s.only({"table", "row"});
    const int table = s.integer("table", 0);
    const int row = s.integer("row", 1);
    if (table == 1 || table == 3) {
      if (table == 1 && (row < 1 || row > static_cast<int>(fixtures::table1().size()))) {
        throw ConfigError(s.key("row"), "Table 1 has rows 1-3");
      }
      out.kind = DesignInput::Kind::u1;
      out.u1 = table == 1 ? repro::design_from(fixtures::table1()[row - 1]) : repro::design_from(fixtures::table3());
      return out;
    }
    if (table == 2) {
      if (row < 1 || row > static_cast<int>(fixtures::table2().size())) {
        throw ConfigError(s.key("row"), "Table 2 has rows 1-4");
      }
      out.kind = DesignInput::Kind::u2;
      out.u2 = repro::design_from(fixtures::table2()[row - 1]);
      return out;
    }
    throw ConfigError(s.key("table"), "expected 1, 2 or 3");
  }
  const std::string type = s.string("type", "u1");
  InteractionParams v;
  if (type == "u1") {
    s.only({"type", "omega_mhz", "delta_mhz", "v_mhz", "n"});
    const LaserParams l{cplx(mhz(s.require_number("omega_mhz")), 0.0), mhz(s.require_number("delta_mhz"))};
    v.v = mhz(s.require_number("v_mhz"));
    const int n = s.integer("n", 0);
    if (n < 1) throw ConfigError(s.key("n"), "must be an integer of at least 1");
    out.kind = DesignInput::Kind::u1;
    out.u1 = make_design_u1(l, v, n);
    return out;
  }
  if (type == "u2") {
    s.only({"type", "omega_c_mhz", "delta_c_mhz", "omega_t_mhz", "delta_t_mhz", "v_mhz", "n_c", "n_t"});
    const LaserParams lc{cplx(mhz(s.require_number("omega_c_mhz")), 0.0), mhz(s.require_number("delta_c_mhz"))};
    const LaserParams lt{cplx(mhz(s.require_number("omega_t_mhz")), 0.0), mhz(s.require_number("delta_t_mhz"))};
    v.v = mhz(s.require_number("v_mhz"));
    const int n_c = s.integer("n_c", 0), n_t = s.integer("n_t", 0);
    if (n_c < 1) throw ConfigError(s.key("n_c"), "must be an integer of at least 1");
    if (n_t < 1) throw ConfigError(s.key("n_t"), "must be an integer of at least 1");
    out.kind = DesignInput::Kind::u2;
    out.u2 = make_design_u2(lc, lt, v, n_c, n_t);
    return out;
  }
  throw ConfigError(s.key("type"), "expected \"u1\" or \"u2\"");
}

double parse_cz_tolerance(const Json& config) {
  const Section s = root_of(config).child("cz");
  s.only({"tolerance"});
  return s.positive("tolerance", 1e-4);
}

std::string drift_mode_name(DriftMode mode) {
  switch (mode) {
    case DriftMode::none: return "none";
    case DriftMode::doppler_max: return "doppler_max";
    case DriftMode::vdw_max: return "vdw_max";
    case DriftMode::all: return "all";
  }
  return "none";
}

DriftMode parse_drift_mode(const std::string& name, const std::string& key) {
  for (DriftMode m : {DriftMode::none, DriftMode::doppler_max, DriftMode::vdw_max, DriftMode::all}) {
    if (drift_mode_name(m) == name) return m;
  }
  throw ConfigError(key, "unknown drift mode \"" + name + "\" (none, doppler_max, vdw_max, all)");
}

SweepConfig parse_noise_sweep(const Json& config) {
  const Section root = root_of(config);
  const Section s = root.child("noise");
  if (!s.present()) throw ConfigError("noise", "missing noise block");
  s.only({"temperatures_uk", "drift_modes", "lifetime_us", "edge_ns", "phase_noise", "leak", "spacing_um",
          "lambda1_nm", "lambda2_nm", "trap", "samples", "bootstrap", "ci_tolerance", "steps", "position_quadrature",
          "sample_positions"});
  SweepConfig out;
  if (root.has("design")) {
    const DesignInput d = parse_design(config);
    if (d.kind != DesignInput::Kind::u1) throw ConfigError("design", "the noise sweep needs a U1 design");
    out.design = d.u1;
  } else {
    out.design = repro::design_from(fixtures::table3());
  }

  for (double t : s.numbers("temperatures_uk")) {
    if (t < 0.0) throw ConfigError(s.key("temperatures_uk"), "temperatures must be non-negative");
    out.temperatures.push_back(units::microkelvin(t));
  }
  if (s.has("drift_modes")) {
    const Json& modes = s.at("drift_modes");
    if (!modes.is_array()) throw ConfigError(s.key("drift_modes"), "expected a list of mode names");
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string k = s.key("drift_modes") + "[" + std::to_string(i) + "]";
      if (!modes[i].is_string()) throw ConfigError(k, "expected a mode name");
      out.modes.push_back(parse_drift_mode(modes[i].get<std::string>(), k));
    }
  } else {
    out.modes = {DriftMode::all};
  }

  NoiseScenario& b = out.base;
  b = thermal_scenario(0.0, DriftMode::none);
  const double lifetime_us = s.number("lifetime_us", 1200.0);
  if (lifetime_us < 0.0) throw ConfigError(s.key("lifetime_us"), "must be non-negative (0 disables decay)");
  b.lifetime = lifetime_us > 0.0 ? units::us(lifetime_us) : std::numeric_limits<double>::infinity();
  b.edge = units::ns(s.number("edge_ns", 0.0));
  if (b.edge < 0.0 || 2.0 * b.edge > out.design.gate_time) {
    throw ConfigError(s.key("edge_ns"), "need 0 <= 2*edge <= gate time");
  }
  b.spacing_um = s.positive("spacing_um", b.spacing_um);
  b.lambda1_nm = s.positive("lambda1_nm", b.lambda1_nm);
  b.lambda2_nm = s.positive("lambda2_nm", b.lambda2_nm);
  b.steps = s.integer("steps", b.steps);
  if (b.steps < 1) throw ConfigError(s.key("steps"), "must be at least 1");
  b.position_quadrature = s.boolean("position_quadrature", false);
  b.sample_positions = s.boolean("sample_positions", true);
  b.seed = seed_of(root);

  const Section trap = s.child("trap");
  trap.only({"waist_um", "wavelength_um", "depth_mk"});
  b.trap.waist_um = trap.positive("waist_um", b.trap.waist_um);
  b.trap.wavelength_um = trap.positive("wavelength_um", b.trap.wavelength_um);
  b.trap.depth_k = units::millikelvin(trap.positive("depth_mk", 1e3 * b.trap.depth_k));

  if (s.has("phase_noise")) {
    const Json& p = s.at("phase_noise");
    const std::string k = s.key("phase_noise");
    if (p.is_boolean()) {
      if (p.get<bool>()) b.phase_noise = PhaseNoiseSpectrum::enhanced();
    } else if (p.is_string()) {
      if (p.get<std::string>() != "enhanced") throw ConfigError(k, "expected \"enhanced\", false or a table");
      b.phase_noise = PhaseNoiseSpectrum::enhanced();
    } else {
      const Section t(&p, k);
      t.only({"f_mhz", "s_hz2_per_hz"});
      const auto f = t.numbers("f_mhz");
      const auto sv = t.numbers("s_hz2_per_hz");
      if (f.size() != sv.size()) throw ConfigError(k, "f_mhz and s_hz2_per_hz differ in length");
      for (double x : f) {
        if (!(x > 0.0)) throw ConfigError(t.key("f_mhz"), "frequencies must be positive");
        b.phase_noise.f_hz.push_back(1e6 * x);
      }
      b.phase_noise.s_hz2_per_hz = sv;
    }
  }

  const Section leak = s.child("leak");
  leak.only({"on", "ratio_d", "ratio_s", "delta_d_mhz", "delta_s_mhz", "scheme"});
  b.leak_on = leak.boolean("on", true);
  b.leak.detuning_d = mhz(leak.number("delta_d_mhz", units::to_mhz(b.leak.detuning_d)));
  b.leak.detuning_s = mhz(leak.number("delta_s_mhz", units::to_mhz(b.leak.detuning_s)));
  if (leak.has("scheme")) {
    if (leak.has("ratio_d") || leak.has("ratio_s")) {
      throw ConfigError(leak.key("scheme"), "give either an excitation scheme or explicit ratios");
    }
    const Section sc = leak.child("scheme");
    sc.only({"delta_2pho_ghz", "delta_hyp_mhz", "ratio_98d", "ratio_99s"});
    ExcitationScheme scheme;
    scheme.delta_2pho = units::ghz(sc.number("delta_2pho_ghz", 2.0));
    scheme.delta_hyp = mhz(sc.number("delta_hyp_mhz", units::to_mhz(scheme.delta_hyp)));
    scheme.ratio_98d = sc.number("ratio_98d", scheme.ratio_98d);
    scheme.ratio_99s = sc.number("ratio_99s", scheme.ratio_99s);
    try {
      const LeakRatios r = leak_ratios(scheme);
      b.leak.ratio_d = r.d;
      b.leak.ratio_s = r.s;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(leak.key("scheme"), e.what());
    }
  } else {
    b.leak.ratio_d = leak.number("ratio_d", b.leak.ratio_d);
    b.leak.ratio_s = leak.number("ratio_s", b.leak.ratio_s);
  }

  out.options.n_samples = s.integer("samples", 100);
  if (out.options.n_samples < 1) throw ConfigError(s.key("samples"), "must be at least 1");
  out.options.n_bootstrap = s.integer("bootstrap", 1000);
  if (out.options.n_bootstrap < 1) throw ConfigError(s.key("bootstrap"), "must be at least 1");
  out.options.ci_tolerance = s.number("ci_tolerance", 0.0);
  out.options.workers = workers_of(root);
  return out;
}

const std::vector<std::string>& u1_columns() {
  static const std::vector<std::string> cols = {
      "N",       "M1",    "M2",   "M3",          "omega_MHz",    "delta_MHz", "v_MHz", "tg_ns", "alpha_over_pi",
      "beta_over_pi", "beta_minus_2alpha_over_pi", "e_ro", "e_de_ns_per_tau"};
  return cols;
}

const std::vector<std::string>& u2_columns() {
  static const std::vector<std::string> cols = {
      "Nc",          "Nt",           "omega_c_MHz",  "delta_c_MHz",   "omega_t_MHz",
      "delta_t_MHz", "v_MHz",        "tc_ns",        "tt_ns",         "alpha_over_pi",
      "gamma_over_pi", "beta_over_pi", "beta_minus_alpha_minus_gamma_over_pi", "e_ro", "e_de_ns_per_tau"};
  return cols;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {"T_a_uK", "drift_mode", "mean_error", "ci_low", "ci_high", "n_traj"};
  return cols;
}

void write_u1_csv(std::ostream& os, const std::vector<GateDesignU1>& designs) {
  write_row(os, u1_columns());
  for (const auto& d : designs) {
    write_row(os, {std::to_string(d.n), std::to_string(d.m[0]), std::to_string(d.m[1]), std::to_string(d.m[2]),
                   fmt(units::to_mhz(std::abs(d.laser.rabi))), fmt(units::to_mhz(d.laser.detuning)),
                   fmt(units::to_mhz(d.interaction.v)), fmt(units::to_ns(d.gate_time)),
                   fmt(reduce_angle(d.alpha) / units::pi), fmt(reduce_angle(d.beta_gate) / units::pi),
                   fmt(wrap_positive(d.beta_gate - 2.0 * d.alpha) / units::pi), fmt(d.e_ro),
                   fmt(units::to_ns(d.e_de_per_tau))});
  }
}

void write_u2_csv(std::ostream& os, const std::vector<GateDesignU2>& designs) {
  write_row(os, u2_columns());
  for (const auto& d : designs) {
    write_row(os, {std::to_string(d.n_c), std::to_string(d.n_t), fmt(units::to_mhz(std::abs(d.control.rabi))),
                   fmt(units::to_mhz(d.control.detuning)), fmt(units::to_mhz(std::abs(d.target.rabi))),
                   fmt(units::to_mhz(d.target.detuning)), fmt(units::to_mhz(d.interaction.v)),
                   fmt(units::to_ns(d.t_c)), fmt(units::to_ns(d.t_t)), fmt(reduce_angle(d.alpha) / units::pi),
                   fmt(reduce_angle(d.gamma) / units::pi), fmt(reduce_angle(d.beta) / units::pi),
                   fmt(wrap_positive(d.beta - d.alpha - d.gamma) / units::pi), fmt(d.e_ro),
                   fmt(units::to_ns(d.e_de_per_tau))});
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  write_row(os, sweep_columns());
  for (const auto& r : rows) {
    write_row(os, {fmt(units::to_us(r.temperature)), drift_mode_name(r.mode), fmt(r.estimate.mean),
                   fmt(r.estimate.ci_low), fmt(r.estimate.ci_high), std::to_string(r.estimate.n_samples)});
  }
}

void write_series(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("write_series: x and y differ in length");
  for (std::size_t k = 0; k < x.size(); ++k) os << fmt(x[k]) << " " << fmt(y[k]) << "\n";
}

Json make_manifest(const std::string& command, const Json& config, std::uint64_t seed, int workers,
                   const std::vector<std::string>& outputs) {
  Json m;
  m["manifest_version"] = kManifestVersion;
  m["tool"] = "rydgate";
  m["version"] = RYDGATE_VERSION;
  m["command"] = command;
  m["seed"] = seed;
  m["workers"] = workers;
  m["config"] = config;
  m["csv_schema"] = {{"version", csv_schema_version},
                     {"search_u1", u1_columns()},
                     {"search_u2", u2_columns()},
                     {"noise_sweep", sweep_columns()}};
  m["outputs"] = outputs;
  m["rerun"] = "rydgate-cli " + command + " --config manifest.json";
  return m;
}

void write_manifest(const std::filesystem::path& dir, const Json& manifest) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << "\n";
}

}  // namespace rydgate::io
