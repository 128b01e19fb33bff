#pragma once

#include <string>
#include <vector>

#include "rydgate/qmath.hpp"

namespace rydgate {

struct SingleQubitGate {
  Eigen::Matrix2cd matrix;
  std::string label;
};

// Unit 3-vector; construction normalises and rejects the zero vector.
class Axis {
 public:
  Axis(double x, double y, double z);
  explicit Axis(const Vec3& n) : Axis(n.x(), n.y(), n.z()) {}
  const Vec3& vec() const { return n_; }
  double x() const { return n_.x(); }
  double y() const { return n_.y(); }
  double z() const { return n_.z(); }

  static Axis ex() { return {1.0, 0.0, 0.0}; }
  static Axis ey() { return {0.0, 1.0, 0.0}; }
  static Axis ez() { return {0.0, 0.0, 1.0}; }

 private:
  Vec3 n_;
};

// diag(1, e^{iφ}).
SingleQubitGate phase_gate(double phi);
// exp(−iθ n·σ/2).
SingleQubitGate rotation_gate(const Axis& n, double theta);

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

// a ⊗ b with the first factor acting on the control.
ComplexMatrix kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

struct PhaseCorrections {
  ComplexMatrix o1;  // P_{−β/2} ⊗ P_{−α}
  ComplexMatrix o2;  // P_{−β} ⊗ P_{−2α}
};
PhaseCorrections o1_o2(double alpha, double beta);

enum class CzRegime { four_u1, two_u1 };

struct AbSolution {
  CzRegime regime = CzRegime::four_u1;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  double a = 0.0;
  Axis n2 = Axis::ez();
  Axis n12 = Axis::ez();
  double composite_angle = 0.0;  // rotation angle of the D sequence about n12
  Eigen::Matrix2cd a_gate;       // R_y(θ1)
  Eigen::Matrix2cd b_gate;       // R_z(θ3) R_y(θ2)
};

// Picks the regime from β−2α and solves the single-qubit angles. Throws
// std::domain_error outside the applicability window or when |a| > 1.
AbSolution solve_ab(double alpha, double beta);
AbSolution solve_ab(double alpha, double beta, CzRegime regime);

struct CzComposite {
  ComplexMatrix unitary;
  AbSolution solution;
  int u1_uses = 0;
  std::vector<std::string> steps;
};

CzComposite compose_cz_u1_detailed(const ComplexMatrix& u1, double alpha, double beta);
ComplexMatrix compose_cz_u1(const ComplexMatrix& u1, double alpha, double beta);
// [P_{−2α}]_c ⊗ [P_{−2γ}]_t U2², with α the control-pulse phase.
ComplexMatrix compose_cz_u2(const ComplexMatrix& u2, double control_phase, double target_phase);

// CNOT from a CZ composite by conjugating the target with ∓π/2 y rotations.
ComplexMatrix cz_to_cnot(const ComplexMatrix& cz);

ComplexMatrix cz_matrix();
ComplexMatrix cnot_matrix();

// min over φ of ‖U − e^{iφ}W‖₂.
double gate_distance(const ComplexMatrix& u, const ComplexMatrix& w);

}  // namespace rydgate
