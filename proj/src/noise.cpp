#include "rydgate/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "rydgate/design_u2.hpp"
#include "rydgate/parallel.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using basis::Level;

// Streams of the counter-based generator.
constexpr std::uint64_t kChannelSample = 1;
constexpr std::uint64_t kChannelBootstrap = 2;
constexpr std::uint64_t kChannelTrajectory = 3;

bool is_rydberg(int level) {
  return level == basis::index(Level::r) || level == basis::index(Level::d) || level == basis::index(Level::s);
}

LeakageSpec effective_leak(const NoiseScenario& s) {
  LeakageSpec leak = s.leak;
  if (!s.leak_on) leak.ratio_d = leak.ratio_s = 0.0;
  return leak;
}

double decay_rate(const NoiseScenario& s) { return std::isfinite(s.lifetime) ? 1.0 / s.lifetime : 0.0; }

// 9-dim ladder propagator for a pulse scaled by a linear ramp over [t0, t1].
ComplexMatrix ramp_propagator(const GateDesignU1& d, double t0, double t1, double duration, double edge,
                              int steps) {
  ComplexMatrix u = ComplexMatrix::Identity(9, 9);
  const double h = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    const double tm = t0 + (k + 0.5) * h;
    LaserParams l = d.laser;
    l.rabi *= pulse_envelope(tm, duration, edge);
    u = propagator(h_two_atom(l, l, d.interaction), h) * u;
  }
  return u;
}

ComplexMatrix edge_gate(const GateDesignU1& d, double duration, double edge) {
  if (edge <= 0.0) return propagator(h_two_atom(d.laser, d.laser, d.interaction), duration);
  constexpr int ramp_steps = 2000;
  const ComplexMatrix up = ramp_propagator(d, 0.0, edge, duration, edge, ramp_steps);
  const ComplexMatrix flat = propagator(h_two_atom(d.laser, d.laser, d.interaction), duration - 2.0 * edge);
  const ComplexMatrix down = ramp_propagator(d, duration - edge, duration, duration, edge, ramp_steps);
  return down * flat * up;
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - lo) * (v[hi] - v[lo]);
}

}  // namespace

double TrapConfig::anisotropy() const { return std::numbers::sqrt2 * kPi * waist_um / wavelength_um; }

Vec3 TrapConfig::sigma_um(double temperature) const {
  const double sy = 0.5 * waist_um * std::sqrt(std::max(temperature, 0.0) / depth_k);
  return {anisotropy() * sy, sy, sy};
}

PhaseNoiseSpectrum PhaseNoiseSpectrum::enhanced() {
  PhaseNoiseSpectrum s;
  s.f_hz = {0.1e6, 0.3e6, 0.5e6, 0.7e6, 0.9e6, 1.0e6, 1.1e6, 1.2e6};
  s.s_hz2_per_hz = {300, 1500, 2500, 4500, 7000, 7000, 1000, 400};
  return s;
}

NoiseScenario thermal_scenario(double temperature, DriftMode mode) {
  NoiseScenario s;
  s.temperature = temperature;
  s.drift_mode = mode;
  s.lifetime = 1.2e-3;
  s.leak.detuning_d = units::ghz(1.6);
  s.leak.detuning_s = units::mhz(520.0);
  return s;
}

std::array<Vec3, 2> sample_positions(const TrapConfig& trap, double temperature, Rng& rng, double spacing_um) {
  const Vec3 sigma = trap.sigma_um(temperature);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<Vec3, 2> out;
  for (auto& r : out) {
    for (int k = 0; k < 3; ++k) r(k) = sigma(k) * normal(rng);
  }
  out[1].z() += spacing_um;
  return out;
}

double rms_speed(double temperature) {
  return std::sqrt(units::boltzmann * std::max(temperature, 0.0) / units::rb87_mass) * 1e6;
}

double effective_wavevector(double lambda1_nm, double lambda2_nm) {
  return kTwoPi / (1e-3 * lambda1_nm) - kTwoPi / (1e-3 * lambda2_nm);
}

double doppler_phase(double t, const NoiseScenario& s, double x0_um, double v_um_per_s) {
  return effective_wavevector(s.lambda1_nm, s.lambda2_nm) * (x0_um + v_um_per_s * t);
}

double phase_noise_waveform(double t, const PhaseNoiseSpectrum& spec, const std::vector<double>& phases,
                            double t_g) {
  if (spec.f_hz.size() != spec.s_hz2_per_hz.size() || phases.size() != spec.f_hz.size()) {
    throw std::invalid_argument("phase_noise_waveform: spectrum and phase tables differ in length");
  }
  if (!(t_g > 0.0)) {
    throw std::invalid_argument("phase_noise_waveform: gate time must be positive");
  }
  double phi = 0.0;
  for (std::size_t k = 0; k < spec.f_hz.size(); ++k) {
    const double f = spec.f_hz[k];
    if (!(f > 0.0)) {
      throw std::invalid_argument("phase_noise_waveform: frequencies must be positive");
    }
    phi += 2.0 * std::sqrt(spec.s_hz2_per_hz[k] / t_g) * std::cos(kTwoPi * f * t + phases[k]) / f;
  }
  return phi;
}

double pulse_envelope(double t, double duration, double edge) {
  if (edge < 0.0 || 2.0 * edge > duration) {
    throw std::invalid_argument("pulse_envelope: need 0 <= 2*edge <= duration");
  }
  if (t < 0.0 || t > duration) return 0.0;
  if (edge == 0.0) return 1.0;
  if (t < edge) return t / edge;
  if (t > duration - edge) return (duration - t) / edge;
  return 1.0;
}

std::vector<std::array<Vec3, 2>> drift_branches(DriftMode mode, double v) {
  std::vector<std::array<Vec3, 2>> out;
  const Vec3 x = Vec3::UnitX(), z = Vec3::UnitZ();
  if (mode == DriftMode::none) {
    out.push_back({Vec3::Zero(), Vec3::Zero()});
    return out;
  }
  if (mode == DriftMode::doppler_max || mode == DriftMode::all) {
    for (double sc : {1.0, -1.0}) {
      for (double st : {1.0, -1.0}) out.push_back({sc * v * x, st * v * x});
    }
  }
  if (mode == DriftMode::vdw_max || mode == DriftMode::all) {
    out.push_back({v * z, -v * z});  // approach
    out.push_back({-v * z, v * z});  // depart
  }
  return out;
}

Realization nominal_realization(const NoiseScenario& s) {
  Realization r;
  r.r_t = Vec3(0.0, 0.0, s.spacing_um);
  r.noise_phases.assign(s.phase_noise.f_hz.size(), 0.0);
  return r;
}

GateDynamics::GateDynamics(const NoiseScenario& s, const GateDesignU1& d, const Realization& r,
                           bool computational_only)
    : scenario_(s), design_(d), real_(r) {
  duration_ = s.duration > 0.0 ? s.duration : d.gate_time;
  if (!(s.spacing_um > 0.0)) {
    throw std::invalid_argument("GateDynamics: spacing must be positive");
  }
  if (real_.noise_phases.size() != s.phase_noise.f_hz.size()) {
    throw std::invalid_argument("GateDynamics: one noise phase per spectral line is required");
  }
  v_scale_ = d.interaction.v * std::pow(s.spacing_um, 6);

  int n = std::max(1, s.steps);
  // Keep the per-step decay probability of two atoms below 5%.
  const double gamma = decay_rate(s);
  if (gamma > 0.0) n = std::max(n, static_cast<int>(std::ceil(2.0 * gamma * duration_ / 0.05)));

  LaserParams probe = d.laser;
  probe.rabi = std::abs(probe.rabi) > 0.0 ? probe.rabi : cplx(1.0, 0.0);
  const ComplexMatrix structure = h_leak_two_atom(effective_leak(s), probe, probe, d.interaction);
  const auto blocks = invariant_blocks(structure);
  std::vector<int> comp;
  for (int k = 0; k < basis::comp::dim; ++k) comp.push_back(basis::comp_to_pair(k));

  const double dt = duration_ / n;
  steps_.reserve(n);
  for (int k = 0; k < n; ++k) {
    BlockPropagator p(blocks);
    if (computational_only) p.set_active(comp);
    p.set(hamiltonian((k + 0.5) * dt), dt);
    steps_.push_back(std::move(p));
  }
}

ComplexMatrix GateDynamics::hamiltonian(double t) const {
  const NoiseScenario& s = scenario_;
  const Vec3 rc = real_.r_c + real_.v_c * t;
  const Vec3 rt = real_.r_t + real_.v_t * t;
  const double env = pulse_envelope(t, duration_, s.edge);
  const double noise = s.phase_noise.empty() ? 0.0 : phase_noise_waveform(t, s.phase_noise, real_.noise_phases, duration_);
  LaserParams lc = design_.laser, lt = design_.laser;
  lc.rabi *= env * std::polar(1.0, doppler_phase(t, s, real_.r_c.x(), real_.v_c.x()) + noise);
  lt.rabi *= env * std::polar(1.0, doppler_phase(t, s, real_.r_t.x(), real_.v_t.x()) + noise);
  const double dist = (rc - rt).norm();
  InteractionParams v;
  v.v = v_scale_ / std::pow(dist, 6);
  ComplexMatrix h = h_leak_two_atom(effective_leak(s), lc, lt, v);
  const double gamma = decay_rate(s);
  if (gamma > 0.0) {
    for (int c = 0; c < basis::atom_dim; ++c) {
      for (int a = 0; a < basis::atom_dim; ++a) {
        const int n_ryd = (is_rydberg(c) ? 1 : 0) + (is_rydberg(a) ? 1 : 0);
        if (n_ryd > 0) h(basis::atom_dim * c + a, basis::atom_dim * c + a) -= I * (0.5 * gamma * n_ryd);
      }
    }
  }
  return h;
}

StateVector GateDynamics::evolve(StateVector psi) const {
  for (const auto& p : steps_) p.apply(psi);
  return psi;
}

ComplexMatrix GateDynamics::gate_matrix() const {
  ComplexMatrix g(basis::comp::dim, basis::comp::dim);
  for (int c = 0; c < basis::comp::dim; ++c) {
    const StateVector out = evolve(basis_state(basis::pair_dim, basis::comp_to_pair(c)));
    for (int r = 0; r < basis::comp::dim; ++r) g(r, c) = out(basis::comp_to_pair(r));
  }
  return g;
}

TrajectoryOutcome GateDynamics::trajectory(int input, Rng& rng) const {
  if (input < 0 || input >= basis::comp::dim) {
    throw std::invalid_argument("trajectory: input must be a computational basis index 0..3");
  }
  const double gamma = decay_rate(scenario_);
  const double dt = duration_ / steps();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TrajectoryOutcome out;
  StateVector psi = basis_state(basis::pair_dim, basis::comp_to_pair(input));
  double retained = 1.0;
  for (int k = 0; k < steps(); ++k) {
    const StateVector prev = psi;
    steps_[k].apply(psi);
    const double p = psi.squaredNorm();
    if (gamma > 0.0 && unit(rng) < 1.0 - p) {
      // Channel weights ∝ Γ⟨G†G⟩ of the pre-step state.
      std::array<double, 6> w{};  // (atom, level r/d/s)
      const std::array<Level, 3> levels = {Level::r, Level::d, Level::s};
      for (int c = 0; c < basis::atom_dim; ++c) {
        for (int a = 0; a < basis::atom_dim; ++a) {
          const double pop = std::norm(prev(basis::atom_dim * c + a));
          for (int l = 0; l < 3; ++l) {
            if (c == basis::index(levels[l])) w[l] += pop;
            if (a == basis::index(levels[l])) w[3 + l] += pop;
          }
        }
      }
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      double pick = unit(rng) * total;
      int ch = 0;
      while (ch < 5 && pick >= w[ch]) pick -= w[ch++];
      const int atom = ch / 3;
      const int level = basis::index(levels[ch % 3]);
      StateVector jumped = StateVector::Zero(basis::pair_dim);
      for (int o = 0; o < basis::atom_dim; ++o) {
        const int from = atom == 0 ? basis::atom_dim * level + o : basis::atom_dim * o + level;
        const int to = atom == 0 ? basis::pair(Level::a, static_cast<Level>(o)) : basis::pair(static_cast<Level>(o), Level::a);
        jumped(to) += prev(from);
      }
      psi = jumped / jumped.norm();
      out.jumps.push_back({(k + 0.5) * dt, atom, static_cast<Level>(level)});
    } else {
      if (out.jumps.empty()) retained *= p;
      psi /= std::sqrt(p);
    }
  }
  out.no_jump_loss = std::clamp(1.0 - retained, 0.0, 1.0);
  out.state = psi;
  if (out.jumps.empty()) {
    const ComplexMatrix target = u1_ideal(design_.alpha, design_.beta_gate);
    out.overlap = std::conj(target(input, input)) * psi(basis::comp_to_pair(input));
  }
  return out;
}

double nonhermitian_loss(const NoiseScenario& s, const GateDesignU1& d, int input) {
  if (input < 0 || input >= basis::comp::dim) {
    throw std::invalid_argument("nonhermitian_loss: input must be a computational basis index 0..3");
  }
  const GateDynamics g(s, d, nominal_realization(s), true);
  const StateVector out = g.evolve(basis_state(basis::pair_dim, basis::comp_to_pair(input)));
  return std::clamp(1.0 - out.squaredNorm(), 0.0, 1.0);
}

double nonhermitian_loss_average(const NoiseScenario& s, const GateDesignU1& d) {
  const GateDynamics g(s, d, nominal_realization(s), true);
  double total = 0.0;
  for (int k = 0; k < basis::comp::dim; ++k) {
    total += 1.0 - g.evolve(basis_state(basis::pair_dim, basis::comp_to_pair(k))).squaredNorm();
  }
  return std::clamp(total / basis::comp::dim, 0.0, 1.0);
}

TrajectoryOutcome mcwf_trajectory(const NoiseScenario& s, const GateDesignU1& d, int input, Rng& rng) {
  const GateDynamics g(s, d, nominal_realization(s), false);
  return g.trajectory(input, rng);
}

McwfSummary mcwf_loss(const NoiseScenario& s, const GateDesignU1& d, const std::vector<int>& inputs, int n,
                      int workers) {
  McwfSummary out;
  if (inputs.empty() || n <= 0) return out;
  const GateDynamics g(s, d, nominal_realization(s), false);
  const int total = static_cast<int>(inputs.size()) * n;
  std::vector<char> lost(total, 0);
  parallel_for(total, workers, [&](int i) {
    Rng rng = make_rng(s.seed, static_cast<std::uint64_t>(i), kChannelTrajectory);
    lost[i] = g.trajectory(inputs[i / n], rng).lost() ? 1 : 0;
  });
  double var = 0.0, mean = 0.0;
  int kept = 0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const int count = std::accumulate(lost.begin() + k * n, lost.begin() + (k + 1) * n, 0);
    const double p = static_cast<double>(count) / n;
    mean += p;
    var += p * (1.0 - p) / n;
    kept += n - count;
  }
  const double m = static_cast<double>(inputs.size());
  out.mean_loss = mean / m;
  out.std_error = std::sqrt(var) / m;
  out.no_jump_fraction = static_cast<double>(kept) / total;
  out.trajectories = total;
  return out;
}

double edge_loss(const GateDesignU1& d, double duration, double edge) {
  const ComplexMatrix u = edge_gate(d, duration, edge);
  double loss = 0.0;
  for (int k = 0; k < basis::comp::dim; ++k) {
    const int i = basis::comp_to_ladder(k);
    loss += 1.0 - std::norm(u(i, i));
  }
  return loss / basis::comp::dim;
}

PulseOptimization optimize_pulse_duration(const GateDesignU1& d, double edge) {
  PulseOptimization out;
  out.loss_at_tg = edge_loss(d, d.gate_time, edge);
  out.t_op = d.gate_time;
  if (edge > 0.0) {
    // Work in ns so the bracket is well scaled for the minimiser.
    auto f = [&](double t_ns) { return edge_loss(d, units::ns(t_ns), edge); };
    const double tg = units::to_ns(d.gate_time), e = units::to_ns(edge);
    const auto best = boost::math::tools::brent_find_minima(f, tg, tg + 3.0 * e, 40);
    out.t_op = units::ns(best.first);
  }
  const ComplexMatrix u = edge_gate(d, out.t_op, edge);
  out.loss = edge_loss(d, out.t_op, edge);
  out.alpha = std::arg(u(basis::comp_to_ladder(basis::comp::k01), basis::comp_to_ladder(basis::comp::k01)));
  out.beta = std::arg(u(basis::comp_to_ladder(basis::comp::k11), basis::comp_to_ladder(basis::comp::k11)));
  return out;
}

FidelityEstimate noisy_gate_fidelity(const NoiseScenario& s, const GateDesignU1& d, const FidelityOptions& opt) {
  if (opt.n_samples <= 0) {
    throw std::invalid_argument("noisy_gate_fidelity: n_samples must be positive");
  }
  const auto branches = drift_branches(s.drift_mode, rms_speed(s.temperature));
  const ComplexMatrix target = u1_ideal(d.alpha, d.beta_gate);

  // Three-point x quadrature of the control atom with Gaussian weights.
  std::vector<double> offsets{0.0}, weights{1.0};
  if (s.position_quadrature) {
    const double sx = s.trap.sigma_um(s.temperature).x();
    const double w_side = std::exp(-0.5);
    offsets = {-sx, 0.0, sx};
    weights = {w_side / (1.0 + 2.0 * w_side), 1.0 / (1.0 + 2.0 * w_side), w_side / (1.0 + 2.0 * w_side)};
  }

  FidelityEstimate out;
  out.n_samples = opt.n_samples;
  out.branches = static_cast<int>(branches.size());
  out.sample_errors.assign(opt.n_samples, 0.0);
  parallel_for(opt.n_samples, opt.workers, [&](int i) {
    Rng rng = make_rng(s.seed, static_cast<std::uint64_t>(i), kChannelSample);
    Realization base = nominal_realization(s);
    if (s.sample_positions && !s.position_quadrature) {
      const auto pos = sample_positions(s.trap, s.temperature, rng, s.spacing_um);
      base.r_c = pos[0];
      base.r_t = pos[1];
    }
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    for (auto& p : base.noise_phases) p = phase(rng);
    double err = 0.0;
    for (std::size_t q = 0; q < offsets.size(); ++q) {
      for (const auto& b : branches) {
        Realization r = base;
        r.r_c.x() += offsets[q];
        r.v_c = b[0];
        r.v_t = b[1];
        const GateDynamics g(s, d, r, true);
        err += weights[q] * pedersen_error(target, g.gate_matrix()) / branches.size();
      }
    }
    out.sample_errors[i] = err;
  });

  out.mean = std::accumulate(out.sample_errors.begin(), out.sample_errors.end(), 0.0) / opt.n_samples;
  Rng rng = make_rng(s.seed, 0, kChannelBootstrap);
  std::uniform_int_distribution<int> pick(0, opt.n_samples - 1);
  std::vector<double> means(std::max(1, opt.n_bootstrap));
  for (auto& m : means) {
    double sum = 0.0;
    for (int k = 0; k < opt.n_samples; ++k) sum += out.sample_errors[pick(rng)];
    m = sum / opt.n_samples;
  }
  out.ci_low = percentile(means, 0.025);
  out.ci_high = percentile(means, 0.975);
  out.flagged = opt.ci_tolerance > 0.0 && out.ci_high - out.ci_low > opt.ci_tolerance;
  return out;
}

double rayleigh_range_um(const BeamGeometry& b, double lambda_nm) {
  const double lambda_um = 1e-3 * lambda_nm;
  const double r2 = b.radius_um * b.radius_um;
  return b.squared_wavelength ? kPi * r2 / (lambda_um * lambda_um) : kPi * r2 / lambda_um;
}

double rabi_ratio_gaussian(const Vec3& r_c, const Vec3& r_t, const BeamGeometry& b) {
  const double zc = r_c.z() - 0.5 * b.spacing_um;
  const double zt = r_t.z() - 0.5 * b.spacing_um;
  const double rho_c = r_c.x() * r_c.x() + r_c.y() * r_c.y();
  const double rho_t = r_t.x() * r_t.x() + r_t.y() * r_t.y();
  double ratio = 1.0;
  for (double lambda : {b.lambda1_nm, b.lambda2_nm}) {
    const double z2 = std::pow(rayleigh_range_um(b, lambda), 2);
    const double den_c = z2 + zc * zc, den_t = z2 + zt * zt;
    ratio *= den_t / den_c * std::exp(z2 / (b.radius_um * b.radius_um) * (rho_t / den_t - rho_c / den_c));
  }
  return ratio;
}

}  // namespace rydgate
