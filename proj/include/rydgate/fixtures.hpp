#pragma once

#include <array>

// Published reference rows, in the presentation units (MHz ÷2π, ns, ns/τ).
namespace rydgate::fixtures {

struct Table1Row {
  int case_id;
  double omega_mhz;
  double delta_mhz;
  double v_mhz;
  double beta_minus_2alpha_over_pi;  // reduced to [0, 2)
  int n;
  std::array<int, 3> m;
  double tg_ns;  // printed rounded to 1 ns
  double e_ro;
  double e_de_ns;
};

struct Table2Row {
  int case_id;
  double omega_c_mhz;
  double delta_c_mhz;
  double omega_t_mhz;
  double delta_t_mhz;
  double v_mhz;
  double angle_over_pi;  // (β−α−γ)/π as printed, unreduced
  int n_c;
  int n_t;
  double tc_ns;
  double tt_ns;
  double e_ro;
  double e_de_ns;
};

struct Table3Row {
  double omega_mhz;
  double delta_mhz;
  double v_mhz;
  double spacing_um;
  double tg_us;
  int n;
  double beta_minus_2alpha_over_pi;  // case 1 with Δ and V sign-flipped
};

const std::array<Table1Row, 3>& table1();
const std::array<Table2Row, 4>& table2();
const Table3Row& table3();

// Pulse-edge study on the Table 3 design.
struct PulseEdgeReference {
  double edge_ns = 20.0;
  double loss_at_tg = 2.5e-3;
  double t_op_ns = 2324.76;
  double loss_at_top = 5.14e-10;
  std::array<double, 3> angles_over_pi = {-0.4502974, 0.7748354, -0.3245698};  // α, β, β−2α
};
const PulseEdgeReference& pulse_edge();

// Thermal and decay anchors of the noise study.
struct NoiseReference {
  double c6_thz_um6 = 56.2;
  double v_mhz_at_spacing = 2.81;
  double lifetime_ms = 1.2;
  double decay_error = 5e-4;
  double waist_um = 3.0;
  double trap_wavelength_um = 1.1;
  double depth_mk = 20.0;
  double lambda1_nm = 795.0;
  double lambda2_nm = 474.0;
  double beam_radius_um = 10.0;
  double error_1uk = 5e-3;
  double error_phase_noise = 0.20;
  std::array<double, 8> noise_f_mhz = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0, 1.1, 1.2};
  std::array<double, 8> noise_s_hz2_per_hz = {300, 1500, 2500, 4500, 7000, 7000, 1000, 400};
  double delta_d_ghz = 1.6;
  double delta_s_mhz = 520.0;
  double hyperfine_mhz = 267.0;
  double two_photon_detuning_ghz = 2.0;
  std::array<double, 3> leak_ratio = {2.0, 1.0, 0.84};  // Ω_d : Ω₀ : Ω_s
};
const NoiseReference& noise_reference();

}  // namespace rydgate::fixtures
