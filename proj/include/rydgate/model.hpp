#pragma once

#include <array>
#include <optional>

#include "rydgate/basis.hpp"
#include "rydgate/qmath.hpp"

namespace rydgate {

struct LaserParams {
  cplx rabi{0.0, 0.0};   // rad/s, phase carried by the argument
  double detuning = 0.0;  // rad/s

  double rabi_magnitude() const { return std::abs(rabi); }
  double generalized_rabi() const { return std::hypot(std::abs(rabi), detuning); }
};

struct InteractionParams {
  double v = 0.0;                 // rad/s
  std::optional<double> c6;       // rad/s·µm⁶
  std::optional<double> spacing;  // µm

  static InteractionParams from_c6(double c6, double spacing_um);
  // Throws if both C6 and L are given and disagree with V.
  void validate() const;
};

// Leak couplings scale with the atom's own drive: Ω_d = ratio_d·Ω, Ω_s = ratio_s·Ω.
struct LeakageSpec {
  double ratio_d = 2.0;
  double ratio_s = 0.84;
  double detuning_d = 0.0;  // rad/s
  double detuning_s = 0.0;  // rad/s
  std::array<basis::Level, basis::atom_dim> ordering = basis::atom_order;
};

ComplexMatrix h_single(const LaserParams& l);
ComplexMatrix h_v1(const LaserParams& l, const InteractionParams& v);
ComplexMatrix h_v2(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v);
ComplexMatrix h_vt(const LaserParams& lt, const InteractionParams& v);
ComplexMatrix h_vc(const LaserParams& lc, const InteractionParams& v);
ComplexMatrix h_vt_reduced(const LaserParams& lt);

// Full two-atom ladder Hamiltonian on {0,1,r}⊗{0,1,r}.
ComplexMatrix h_two_atom(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v);

// 36-dim Hamiltonian on {0,1,r,d,s,a}⊗{0,1,r,d,s,a}.
ComplexMatrix h_leak_two_atom(const LeakageSpec& leak, const LaserParams& lc, const LaserParams& lt,
                              const InteractionParams& v);

}  // namespace rydgate
