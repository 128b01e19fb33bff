#pragma once

#include <array>
#include <vector>

#include "rydgate/model.hpp"

namespace rydgate {

struct GateDesignU1 {
  LaserParams laser;
  InteractionParams interaction;
  int n = 0;
  std::array<int, 3> m{};
  double gate_time = 0.0;     // s
  double alpha = 0.0;         // rad, closed form
  double beta = 0.0;          // rad, closed form −(Δ+V/3)t_g
  double beta_gate = 0.0;     // rad, arg<11|U|11> from propagation
  double e_ro = 0.0;
  double e_de_per_tau = 0.0;  // s
};

struct StarkFrequencies {
  std::array<double, 3> c{};  // rad/s
  bool degenerate = false;
};

// Maps an angle to (−π, π].
double reduce_angle(double phi);
// Maps an angle to [0, 2π).
double wrap_positive(double phi);

double gate_time(const LaserParams& l, int n);
double alpha_angle(const LaserParams& l, int n);
StarkFrequencies stark_frequencies(const LaserParams& l, const InteractionParams& v);

// Builds the full design: M by rounding, both β values, E_ro and E_de.
GateDesignU1 make_design_u1(const LaserParams& l, const InteractionParams& v, int n);
// Same without the decay integral (cheap; e_de_per_tau left at zero).
GateDesignU1 make_design_u1_fast(const LaserParams& l, const InteractionParams& v, int n);

// Signed distance of t_g·𝒞_χ/2π from M_χ, in cycles.
std::array<double, 3> resonance_residuals(const GateDesignU1& d);
double beta_angle(const GateDesignU1& d);
double beta_propagated(const LaserParams& l, const InteractionParams& v, double t);
double rotation_error_u1(const GateDesignU1& d);
// Numerator of the decay error; divide by τ.
double decay_error(const GateDesignU1& d);

// 4×4 action on {|00>,|01>,|10>,|11>} from the 9-dim two-atom ladder model.
ComplexMatrix gate_matrix_u1(const GateDesignU1& d);
ComplexMatrix gate_matrix_u1(const LaserParams& l, const InteractionParams& v, double t);
// diag(1, e^{iα}, e^{iα}, e^{iβ}).
ComplexMatrix u1_ideal(double alpha, double beta);

struct SearchU1Options {
  double omega = 0.0;  // rad/s
  double delta_lo = 0.0, delta_hi = 0.0;
  double v_lo = 0.0, v_hi = 0.0;
  int n_min = 1;
  int n_max = 1;
  double grid_step = 0.0;   // rad/s; zero selects 0.05 MHz
  double max_e_ro = 1e-7;
  double max_e_de = 90e-9;  // s
  double tol_cycles = 1e-10;
  // Only grid points with max|r| below this seed a refinement.
  double seed_cycles = 0.25;
  int workers = 1;
};

std::vector<GateDesignU1> search_u1(const SearchU1Options& opt);

// [x sin(y/x)]², x = Ω/√(Ω²+δ²).
double leakage_estimate(double omega, double delta, double y);

}  // namespace rydgate
