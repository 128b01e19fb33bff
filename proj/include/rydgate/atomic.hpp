#pragma once

#include <string>
#include <vector>

#include "rydgate/angular.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

// ⁸⁷Rb two-photon excitation 5S₁/₂ → 5P₃/₂ → nS/nD with both beams π polarised.
// |1> = |F=2, m_F=2>, |0> = |F=1, m_F=1>, |r> = |100s₁/₂, m_J=1/2, m_I=3/2>.
struct ExcitationScheme {
  double delta_2pho = units::ghz(2.0);          // lower-beam detuning from 5P₃/₂ F'=3, seen from |1>
  double delta_hyp = units::mhz(266.650);       // F'=3 − F'=2
  double delta_hyp_21 = units::mhz(156.947);    // F'=2 − F'=1
  double ground_hfs = units::mhz(6834.682611);  // F=2 − F=1
  double field_low = 1.0;                       // field strengths, arbitrary common scale
  double field_upp = 1.0;
  double lower_reduced = 1.0;  // <5P₃/₂||r||5S₁/₂>
  double upper_reduced = 1.0;  // <100S||r||5P>
  // Radial ratios to <100S||r||5P>, fitted so that Ω_d : Ω₀ : Ω_s = 2 : 1 : 0.84.
  double ratio_98d = 0.8944;
  double ratio_99s = 1.5787;
};

// Doubled-argument dipole factors in the convention <j'm'|d_q|jm> = <jm;1q|j'm'><j'||d||j>.
// <(J'I)F'M'|d_q|(JI)FM> / <J'||d||J>.
double hyperfine_dipole_factor(int two_j, int two_f, int two_m, int two_jp, int two_fp, int two_mp, int two_i);
// <(L'S)J'||d||(LS)J> / <L'||d||L> with S = 1/2.
double fine_reduced_factor(int l, int two_j, int lp, int two_jp);
ExactRoot hyperfine_dipole_factor_exact(int two_j, int two_f, int two_m, int two_jp, int two_fp, int two_mp,
                                        int two_i);
ExactRoot fine_reduced_factor_exact(int l, int two_j, int lp, int two_jp);

// One Zeeman component |nL_J, m_J, m_I> of a leak or target state.
struct ZeemanComponent {
  std::string label;
  int l = 0;
  int two_j = 1;
  int two_mj = 1;
  int two_mi = 3;
  double rabi = 0.0;  // relative units, paths via F' combined in quadrature
  double zeta = 0.0;  // rabi / total
};

enum class LeakChannel { d, s };

// Ω₀ to |r> from |1>.
double two_photon_rabi(const ExcitationScheme& s);
// Ω_d from |1> to 98D (J = 3/2, 5/2) or Ω_s from |0> to 99S, relative to the same scale as Ω₀.
double leak_rabi(const ExcitationScheme& s, LeakChannel channel);
// Per-component couplings and normalised ζ of a leak state.
std::vector<ZeemanComponent> leak_components(const ExcitationScheme& s, LeakChannel channel);
// |Σ_j ζ_j Ω_j|; rejects ζ with Σζ² ≠ 1.
double superposition_rabi(const std::vector<double>& zeta, const std::vector<double>& component_rabi);

struct LeakRatios {
  double d = 0.0;  // Ω_d/Ω₀
  double s = 0.0;  // Ω_s/Ω₀
};
LeakRatios leak_ratios(const ExcitationScheme& s);

}  // namespace rydgate
