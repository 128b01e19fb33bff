#pragma once

#include <cstdint>
#include <vector>

#include "rydgate/model.hpp"

namespace rydgate {

struct GateDesignU2 {
  LaserParams control;
  LaserParams target;
  InteractionParams interaction;
  int n_c = 0;
  int n_t = 0;
  double t_c = 0.0;  // s
  double t_t = 0.0;  // s
  double alpha = 0.0;  // control-pulse phase, carried by |10>
  double gamma = 0.0;  // target-pulse phase, carried by |01>
  double beta = 0.0;   // arg<11|U|11>
  double e_ro = 0.0;
  double e_de_per_tau = 0.0;  // s
  bool beta_reliable = true;  // false when |<11|U|11>| < 0.9
};

struct U2Angles {
  double alpha = 0.0;
  double gamma = 0.0;
};

struct StagedEvolution {
  cplx amplitude{0.0, 0.0};  // <11|ψ(end)>
  double p_rr = 0.0;         // |<rr|ψ>|² when the shorter pulse ends
  double p_stray = 0.0;      // shorter-pulse atom left in |r> at that moment
};

U2Angles u2_angles(const LaserParams& lc, const LaserParams& lt, int n_c, int n_t);

StagedEvolution evolve_11_staged(const GateDesignU2& d);

// |11> evolution with the control pulse starting at `control_start` and the
// target pulse at `target_start`. Lasers off contribute no detuning.
StateVector evolve_pair(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v, double t_c,
                        double t_t, double control_start, double target_start);

double beta_u2(const GateDesignU2& d);

// 1 − (|Tr(U†W)|² + Tr(U†W W†U))/20 for 4×4 target U and actual W.
double pedersen_error(const ComplexMatrix& target, const ComplexMatrix& actual);

GateDesignU2 make_design_u2(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v, int n_c,
                            int n_t);
// Without the decay integral.
GateDesignU2 make_design_u2_fast(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v,
                                 int n_c, int n_t);

// diag(1, e^{iγ}, e^{iα}, e^{iβ}) on {|00>,|01>,|10>,|11>}.
ComplexMatrix u2_ideal(double alpha, double gamma, double beta);
// α+γ±π/2, whichever lies closer to the realised β.
double u2_target_beta(const GateDesignU2& d);
// Projected 4×4 action; the shorter pulse starts `offset` after the longer one.
ComplexMatrix gate_matrix_u2(const GateDesignU2& d, double offset = 0.0);
double rotation_error_u2(const GateDesignU2& d, double offset = 0.0);
double decay_error(const GateDesignU2& d);

struct SearchU2Options {
  double omega_t = 0.0;  // rad/s, fixed at the Rabi cap
  double omega_c_lo = 0.0, omega_c_hi = 0.0;
  double delta_c_lo = 0.0, delta_c_hi = 0.0;
  double delta_t_lo = 0.0, delta_t_hi = 0.0;
  double v_lo = 0.0, v_hi = 0.0;
  int n_c_min = 1, n_c_max = 1;
  int n_t_min = 1, n_t_max = 1;
  int starts = 32;
  std::uint64_t seed = 1;
  double max_e_ro = 1e-5;
  double max_e_de = 150e-9;  // s
  // Targets for β−α−γ modulo 2π.
  std::vector<double> target_angles = {1.5707963267948966, -1.5707963267948966};
  double weight_residual = 1.0;
  double weight_deficit = 1.0;
  double weight_angle = 10.0;
  int max_evals = 4000;
  int workers = 1;
};

// Weighted objective minimised by search_u2.
double u2_objective(const GateDesignU2& d, const SearchU2Options& opt);

std::vector<GateDesignU2> search_u2(const SearchU2Options& opt);

}  // namespace rydgate
