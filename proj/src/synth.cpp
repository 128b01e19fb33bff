#include "rydgate/synth.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "rydgate/design_u1.hpp"

namespace rydgate {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd identity2() { return Eigen::Matrix2cd::Identity(); }

std::string fmt_pi(double angle) {
  std::ostringstream os;
  os.precision(7);
  os << angle / kPi << "π";
  return os.str();
}

}  // namespace

Axis::Axis(double x, double y, double z) : n_(x, y, z) {
  const double norm = n_.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("Axis: zero vector");
  }
  n_ /= norm;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0.0, -I, I, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

SingleQubitGate phase_gate(double phi) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  m(1, 1) = std::polar(1.0, phi);
  return {m, "P(" + fmt_pi(phi) + ")"};
}

SingleQubitGate rotation_gate(const Axis& n, double theta) {
  const Eigen::Matrix2cd ns = n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
  const Eigen::Matrix2cd m = std::cos(0.5 * theta) * identity2() - I * std::sin(0.5 * theta) * ns;
  std::ostringstream os;
  os.precision(6);
  os << "R[" << n.x() << "," << n.y() << "," << n.z() << "](" << fmt_pi(theta) << ")";
  return {m, os.str()};
}

ComplexMatrix kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  ComplexMatrix out(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  }
  return out;
}

PhaseCorrections o1_o2(double alpha, double beta) {
  return {kron2(phase_gate(-0.5 * beta).matrix, phase_gate(-alpha).matrix),
          kron2(phase_gate(-beta).matrix, phase_gate(-2.0 * alpha).matrix)};
}

AbSolution solve_ab(double alpha, double beta) {
  const double w = reduce_angle(beta - 2.0 * alpha);
  return solve_ab(alpha, beta, std::abs(w) >= 0.5 * kPi ? CzRegime::two_u1 : CzRegime::four_u1);
}

AbSolution solve_ab(double alpha, double beta, CzRegime regime) {
  const double w = reduce_angle(beta - 2.0 * alpha);
  const double x = 0.5 * w;  // β/2−α taken in (−π/2, π/2]
  const char* name = regime == CzRegime::four_u1 ? "four-U1" : "two-U1";
  if (!(x > -0.5 * kPi && x < 0.5 * kPi) || (x > -3.0 * kPi / 8.0 && x < kPi / 8.0)) {
    std::ostringstream os;
    os << "solve_ab: beta/2-alpha = " << x / kPi << "pi lies outside the applicability window "
       << "(-pi/2, -3pi/8] U [pi/8, pi/2) (" << name << " regime requested)";
    throw std::domain_error(os.str());
  }
  const double c = std::cos(x), s = std::sin(x);
  AbSolution sol;
  sol.regime = regime;
  // cos of half the composite angle: sin(β−2α) for four-U1, 0 (a π rotation) for two-U1.
  const double cos_half = regime == CzRegime::four_u1 ? std::sin(w) : 0.0;
  double a = (c * c - cos_half) / (s * s);
  if (std::abs(a) > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "solve_ab: |a| = " << std::abs(a) << " > 1 in the " << name << " regime; "
       << (regime == CzRegime::four_u1 ? "|beta-2alpha| >= pi/2 needs the two-U1 construction"
                                       : "|beta-2alpha| < pi/2 needs the four-U1 construction");
    throw std::domain_error(os.str());
  }
  a = std::clamp(a, -1.0, 1.0);
  const double b = std::sqrt(1.0 - a * a);
  sol.a = a;
  sol.theta1 = std::acos(a);
  sol.n2 = Axis(b, 0.0, a);

  const Vec3 z(0.0, 0.0, 1.0);
  const Vec3 n12 = s * c * (z + sol.n2.vec()) + s * s * z.cross(sol.n2.vec());
  sol.n12 = Axis(n12);
  sol.composite_angle = 2.0 * std::atan2(n12.norm(), c * c - s * s * a);
  sol.theta2 = std::acos(std::clamp(sol.n12.z(), -1.0, 1.0));
  sol.theta3 = std::atan2(sol.n12.y(), sol.n12.x());

  sol.a_gate = rotation_gate(Axis::ey(), sol.theta1).matrix;
  sol.b_gate = rotation_gate(Axis::ez(), sol.theta3).matrix * rotation_gate(Axis::ey(), sol.theta2).matrix;
  return sol;
}

CzComposite compose_cz_u1_detailed(const ComplexMatrix& u1, double alpha, double beta) {
  if (u1.rows() != 4 || u1.cols() != 4) {
    throw std::invalid_argument("compose_cz_u1: U1 must be 4x4");
  }
  CzComposite out;
  out.solution = solve_ab(alpha, beta);
  const AbSolution& sol = out.solution;
  const PhaseCorrections o = o1_o2(alpha, beta);
  const Eigen::Matrix2cd id = identity2();
  const ComplexMatrix a = kron2(id, sol.a_gate);
  const ComplexMatrix b = kron2(id, sol.b_gate);
  const ComplexMatrix o1u1 = o.o1 * u1;

  // B† [O1U1 A O1U1 A†] B is a controlled z rotation.
  const ComplexMatrix d = b.adjoint() * o1u1 * a * o1u1 * a.adjoint() * b;
  const ComplexMatrix p = kron2(phase_gate(0.5 * kPi).matrix, id);
  out.steps = {"I x B(theta2=" + fmt_pi(sol.theta2) + ", theta3=" + fmt_pi(sol.theta3) + ")",
               "I x A^dag(theta1=" + fmt_pi(sol.theta1) + ")",
               "O1 U1",
               "I x A",
               "O1 U1",
               "I x B^dag"};
  if (sol.regime == CzRegime::four_u1) {
    out.unitary = p * d * o.o2 * u1 * u1;
    out.u1_uses = 4;
    out.steps.insert(out.steps.begin(), "O2 U1^2");
  } else {
    out.unitary = p * d;
    out.u1_uses = 2;
  }
  out.steps.push_back("P(pi/2) x I");
  return out;
}

ComplexMatrix compose_cz_u1(const ComplexMatrix& u1, double alpha, double beta) {
  return compose_cz_u1_detailed(u1, alpha, beta).unitary;
}

ComplexMatrix compose_cz_u2(const ComplexMatrix& u2, double control_phase, double target_phase) {
  if (u2.rows() != 4 || u2.cols() != 4) {
    throw std::invalid_argument("compose_cz_u2: U2 must be 4x4");
  }
  return kron2(phase_gate(-2.0 * control_phase).matrix, phase_gate(-2.0 * target_phase).matrix) * u2 * u2;
}

ComplexMatrix cz_to_cnot(const ComplexMatrix& cz) {
  const Eigen::Matrix2cd ry = rotation_gate(Axis::ey(), 0.5 * kPi).matrix;
  return kron2(identity2(), ry) * cz * kron2(identity2(), ry.adjoint());
}

ComplexMatrix cz_matrix() {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  return m;
}

double gate_distance(const ComplexMatrix& u, const ComplexMatrix& w) {
  if (u.rows() != w.rows() || u.cols() != w.cols()) {
    throw std::invalid_argument("gate_distance: shape mismatch");
  }
  auto dist = [&](double phi) {
    const ComplexMatrix diff = u - std::polar(1.0, phi) * w;
    return Eigen::JacobiSVD<ComplexMatrix>(diff).singularValues()(0);
  };
  // Start from the trace-overlap optimum, then polish the 2-norm directly;
  // the two optima differ when the phase errors are spread unevenly.
  const double phi0 = std::arg((w.adjoint() * u).trace());
  double best_phi = phi0, best = dist(phi0);
  constexpr int scan = 256;
  for (int k = 0; k < scan; ++k) {
    const double phi = phi0 + 2.0 * kPi * k / scan;
    const double d = dist(phi);
    if (d < best) {
      best = d;
      best_phi = phi;
    }
  }
  const double h = 2.0 * kPi / scan;
  const auto res = boost::math::tools::brent_find_minima(dist, best_phi - h, best_phi + h, 50);
  return std::min(best, res.second);
}

}  // namespace rydgate
