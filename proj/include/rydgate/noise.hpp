#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "rydgate/design_u1.hpp"
#include "rydgate/model.hpp"
#include "rydgate/rng.hpp"

namespace rydgate {

// Optical tweezer holding each qubit before and after the gate.
struct TrapConfig {
  double waist_um = 3.0;
  double wavelength_um = 1.1;
  double depth_k = 20e-3;  // U/k_B

  // ξ = √2·π·w/λ.
  double anisotropy() const;
  // (σ_x, σ_y, σ_z) in µm at temperature T (K); σ_y = σ_z = (w/2)√(T/U), σ_x = ξσ_y.
  Vec3 sigma_um(double temperature) const;
};

enum class DriftMode {
  none,         // atoms at rest
  doppler_max,  // (±v, ±v) along the beam axis x
  vdw_max,      // (v, −v) and (−v, v) along the separation axis z
  all           // both sets, six branches
};

struct PhaseNoiseSpectrum {
  std::vector<double> f_hz;
  std::vector<double> s_hz2_per_hz;

  bool empty() const { return f_hz.empty(); }
  // Enhanced profile used for the laser phase-noise study.
  static PhaseNoiseSpectrum enhanced();
};

struct NoiseScenario {
  TrapConfig trap;
  double temperature = 0.0;  // K
  DriftMode drift_mode = DriftMode::none;
  double lifetime = std::numeric_limits<double>::infinity();  // s
  double lambda1_nm = 795.0;
  double lambda2_nm = 474.0;
  PhaseNoiseSpectrum phase_noise;  // empty disables phase noise
  double edge = 0.0;               // s, linear ramp duration
  LeakageSpec leak;
  bool leak_on = true;
  double spacing_um = 16.5;
  // Replaces random positions with the three-point x quadrature of the control atom.
  bool position_quadrature = false;
  bool sample_positions = true;
  int steps = 1000;
  double duration = 0.0;  // s; zero selects the design gate time
  std::uint64_t seed = 1;
};

// Default scenario for the thermal study: leak detunings 1.6 GHz and 520 MHz,
// τ = 1.2 ms, the tweezer above, and the Table 3 spacing.
NoiseScenario thermal_scenario(double temperature, DriftMode mode);

// Initial condition of one Monte-Carlo sample.
struct Realization {
  Vec3 r_c = Vec3::Zero();  // µm
  Vec3 r_t = Vec3::Zero();  // µm
  Vec3 v_c = Vec3::Zero();  // µm/s
  Vec3 v_t = Vec3::Zero();  // µm/s
  std::vector<double> noise_phases;  // φ_f, one per spectral line
};

struct JumpEvent {
  double time = 0.0;  // s
  int atom = 0;       // 0 control, 1 target
  basis::Level level = basis::Level::r;
};

struct TrajectoryOutcome {
  StateVector state;  // 36-dim, normalised
  std::vector<JumpEvent> jumps;
  // <U_target·input | ψ_final>, zero once a jump left the computational space.
  cplx overlap{0.0, 0.0};
  // Norm lost by the no-jump evolution before the first jump (or to the end).
  double no_jump_loss = 0.0;
  bool lost() const { return !jumps.empty(); }
};

// Independent Gaussian offsets around (0,0,0) for the control and (0,0,L) for the target.
std::array<Vec3, 2> sample_positions(const TrapConfig& trap, double temperature, Rng& rng,
                                     double spacing_um = 0.0);

// √(k_B T/m) for ⁸⁷Rb, in µm/s.
double rms_speed(double temperature);
// k₁ − k₂ in rad/µm for counter-propagating beams.
double effective_wavevector(double lambda1_nm, double lambda2_nm);
// (k₁ − k₂)(x₀ + v t).
double doppler_phase(double t, const NoiseScenario& s, double x0_um, double v_um_per_s);

// φ(t) = 2 Σ_f √(S(f)/t_g) cos(2πft + φ_f)/f.
double phase_noise_waveform(double t, const PhaseNoiseSpectrum& spec, const std::vector<double>& phases,
                            double t_g);

// Trapezoid with linear ramps of length `edge`.
double pulse_envelope(double t, double duration, double edge);

// Velocity pairs (control, target) in µm/s for the drift mode.
std::vector<std::array<Vec3, 2>> drift_branches(DriftMode mode, double speed_um_per_s);

// Time-dependent 36-dim model of one realization, discretised on a uniform grid
// with exact per-step exponentials of the midpoint (non-Hermitian) Hamiltonian.
class GateDynamics {
 public:
  // `computational_only` skips the blocks not reachable from computational inputs.
  GateDynamics(const NoiseScenario& s, const GateDesignU1& d, const Realization& r, bool computational_only);

  double duration() const { return duration_; }
  int steps() const { return static_cast<int>(steps_.size()); }
  ComplexMatrix hamiltonian(double t) const;
  // No-jump evolution without renormalisation.
  StateVector evolve(StateVector psi) const;
  // Projected 4×4 action on {|00>, |01>, |10>, |11>}.
  ComplexMatrix gate_matrix() const;
  TrajectoryOutcome trajectory(int input, Rng& rng) const;

 private:
  const NoiseScenario& scenario_;
  const GateDesignU1& design_;
  Realization real_;
  double duration_ = 0.0;
  double v_scale_ = 0.0;  // C6 chosen so that V equals the design value at the nominal spacing
  std::vector<BlockPropagator> steps_;
};

Realization nominal_realization(const NoiseScenario& s);

// Deterministic norm loss of one computational input at the nominal realization.
double nonhermitian_loss(const NoiseScenario& s, const GateDesignU1& d, int input);
// Mean over the four computational inputs.
double nonhermitian_loss_average(const NoiseScenario& s, const GateDesignU1& d);

TrajectoryOutcome mcwf_trajectory(const NoiseScenario& s, const GateDesignU1& d, int input, Rng& rng);

struct McwfSummary {
  double mean_loss = 0.0;
  double std_error = 0.0;
  double no_jump_fraction = 0.0;
  int trajectories = 0;
};
// Loss fraction over `n` trajectories per input, averaged over `inputs`.
McwfSummary mcwf_loss(const NoiseScenario& s, const GateDesignU1& d, const std::vector<int>& inputs, int n,
                      int workers = 1);

struct PulseOptimization {
  double t_op = 0.0;        // s
  double loss = 0.0;        // average population loss at t_op
  double loss_at_tg = 0.0;  // same at the square-pulse gate time
  double alpha = 0.0;
  double beta = 0.0;
};
// Average population loss over the four inputs for a trapezoidal pulse.
double edge_loss(const GateDesignU1& d, double duration, double edge);
PulseOptimization optimize_pulse_duration(const GateDesignU1& d, double edge);

struct FidelityOptions {
  int n_samples = 100;   // position / noise-phase draws
  int n_bootstrap = 1000;
  double ci_tolerance = 0.0;  // > 0 flags wider intervals
  int workers = 1;
};

struct FidelityEstimate {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_samples = 0;
  int branches = 0;
  bool flagged = false;
  std::vector<double> sample_errors;  // per sample, averaged over branches
};

// Pedersen error of the projected gate against u1_ideal(α, β_gate), averaged
// over drift branches and samples, with a percentile-bootstrap 95% CI.
FidelityEstimate noisy_gate_fidelity(const NoiseScenario& s, const GateDesignU1& d, const FidelityOptions& opt);

struct BeamGeometry {
  double radius_um = 10.0;
  double lambda1_nm = 795.0;
  double lambda2_nm = 474.0;
  double spacing_um = 16.5;
  // false: 𝒵 = πR²/λ (Rayleigh range); true: 𝒵 = πR²/λ² with lengths in µm.
  bool squared_wavelength = false;
};
double rayleigh_range_um(const BeamGeometry& b, double lambda_nm);
// |Ω_c|/|Ω_t| for two focused beams with foci at (0, 0, L/2).
double rabi_ratio_gaussian(const Vec3& r_c, const Vec3& r_t, const BeamGeometry& b);

}  // namespace rydgate
