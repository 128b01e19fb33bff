#include <random>

#include "doctest.h"
#include "rydgate/design_u1.hpp"
#include "rydgate/design_u2.hpp"
#include "rydgate/fixtures.hpp"
#include "rydgate/synth.hpp"
#include "rydgate/units.hpp"

using namespace rydgate;
using units::mhz;
using units::pi;

namespace {

double distance2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  ComplexMatrix pa(4, 4), pb(4, 4);
  pa = kron2(a, Eigen::Matrix2cd::Identity());
  pb = kron2(b, Eigen::Matrix2cd::Identity());
  return gate_distance(pa, pb);
}

ComplexMatrix controlled(const Eigen::Matrix2cd& u) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.block(0, 0, 2, 2) = Eigen::Matrix2cd::Identity();
  m.block(2, 2, 2, 2) = u;
  return m;
}

Eigen::Matrix2cd exp_sz(double phi) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, phi);
  m(1, 1) = std::polar(1.0, -phi);
  return m;
}

// A random (α, β) with β/2−α inside the applicability window.
std::pair<double, double> random_window_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x;
  if (u(rng) < 0.5) {
    x = -pi / 2 + 1e-3 + (pi / 8 - 2e-3) * u(rng);
  } else {
    x = pi / 8 + 1e-3 + (3 * pi / 8 - 2e-3) * u(rng);
  }
  const double alpha = -pi + 2 * pi * u(rng);
  return {alpha, 2 * (x + alpha)};
}

}  // namespace

TEST_CASE("phase and rotation gates") {
  CHECK(phase_gate(0.0).matrix.isApprox(Eigen::Matrix2cd::Identity()));
  CHECK(rotation_gate(Axis::ez(), 2 * pi).matrix.isApprox(-Eigen::Matrix2cd::Identity(), 1e-12));
  const double t1 = 0.83;
  const Eigen::Matrix2cd a = rotation_gate(Axis::ey(), t1).matrix;
  const Eigen::Matrix2cd lhs = a * pauli_z() * a.adjoint();
  const Eigen::Matrix2cd rhs = std::cos(t1) * pauli_z() + std::sin(t1) * pauli_x();
  CHECK((lhs - rhs).norm() < 1e-12);
  CHECK(is_unitary(rotation_gate(Axis(0.3, -0.2, 0.9), 1.7).matrix));
  CHECK_THROWS(Axis(0.0, 0.0, 0.0));
  CHECK(Axis(3.0, 4.0, 0.0).vec().norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("o1_o2 turn U1 into controlled z rotations") {
  const double alpha = 0.37, beta = -1.21;
  const auto o = o1_o2(alpha, beta);
  const ComplexMatrix u1 = u1_ideal(alpha, beta);
  CHECK(gate_distance(o.o1 * u1, controlled(exp_sz(alpha - beta / 2))) < 1e-12);
  CHECK(gate_distance(o.o2 * u1 * u1, controlled(exp_sz(2 * alpha - beta))) < 1e-12);
  const auto z = o1_o2(0.0, 0.0);
  CHECK(z.o1.isApprox(ComplexMatrix::Identity(4, 4)));
  CHECK(z.o2.isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST_CASE("solve_ab identities") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    const auto [alpha, beta] = random_window_angles(rng);
    AbSolution s;
    try {
      s = solve_ab(alpha, beta);
    } catch (const std::domain_error&) {
      continue;
    }
    const double w = reduce_angle(beta - 2 * alpha);
    // A rotates the z axis of the controlled rotation onto n2.
    const Eigen::Matrix2cd lhs = rotation_gate(s.n2, w).matrix;
    const Eigen::Matrix2cd rhs = s.a_gate * exp_sz(alpha - beta / 2) * s.a_gate.adjoint();
    CHECK(distance2(lhs, rhs) < 1e-9);
    const double x = w / 2;
    if (s.regime == CzRegime::four_u1) {
      CHECK(std::cos(pi / 2 - w) ==
            doctest::Approx(std::cos(x) * std::cos(x) - std::sin(x) * std::sin(x) * s.n2.z()).epsilon(1e-12));
    }
    CHECK(s.n2.vec().norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.n12.vec().norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("solve_ab regime and window errors") {
  CHECK_THROWS_AS(solve_ab(0.0, 0.0), std::domain_error);  // β/2−α = 0 is inside the excluded band
  CHECK_THROWS_AS(solve_ab(0.0, 0.2 * pi, CzRegime::two_u1), std::domain_error);
  CHECK(solve_ab(0.0, 0.6 * pi).regime == CzRegime::two_u1);
  CHECK(solve_ab(0.0, 0.32457 * pi).regime == CzRegime::four_u1);
}

TEST_CASE("D sequence is a controlled rotation about n12") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int k = 0; k < 100 && checked < 20; ++k) {
    const auto [alpha, beta] = random_window_angles(rng);
    AbSolution s;
    try {
      s = solve_ab(alpha, beta);
    } catch (const std::domain_error&) {
      continue;
    }
    const auto comp = compose_cz_u1_detailed(u1_ideal(alpha, beta), alpha, beta);
    const auto o = o1_o2(alpha, beta);
    const ComplexMatrix a = kron2(Eigen::Matrix2cd::Identity(), s.a_gate);
    const ComplexMatrix o1u1 = o.o1 * u1_ideal(alpha, beta);
    const ComplexMatrix inner = o1u1 * a * o1u1 * a.adjoint();
    CHECK(gate_distance(inner, controlled(rotation_gate(s.n12, s.composite_angle).matrix)) < 1e-9);
    if (s.regime == CzRegime::four_u1) {
      const double w = reduce_angle(beta - 2 * alpha);
      CHECK(std::abs(reduce_angle(s.composite_angle - (-2.0 * (-pi / 2 + w)))) < 1e-9);
    } else {
      CHECK(s.composite_angle == doctest::Approx(pi).epsilon(1e-9));
    }
    CHECK(is_unitary(comp.unitary, 1e-9));
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("compose_cz_u1 with formula-perfect inputs") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int k = 0; k < 400 && checked < 100; ++k) {
    const auto [alpha, beta] = random_window_angles(rng);
    ComplexMatrix cz;
    try {
      cz = compose_cz_u1(u1_ideal(alpha, beta), alpha, beta);
    } catch (const std::domain_error&) {
      continue;
    }
    CHECK(gate_distance(cz, cz_matrix()) < 1e-9);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("compose_cz_u1 on the published U1 rows") {
  for (int k : {0, 1}) {
    const auto& row = fixtures::table1()[k];
    const GateDesignU1 d = make_design_u1_fast(LaserParams{cplx(mhz(row.omega_mhz), 0.0), mhz(row.delta_mhz)},
                                               InteractionParams{mhz(row.v_mhz)}, row.n);
    const auto comp = compose_cz_u1_detailed(gate_matrix_u1(d), d.alpha, d.beta_gate);
    CHECK(comp.u1_uses == (k == 0 ? 4 : 2));
    CHECK(gate_distance(comp.unitary, cz_matrix()) < 1e-6);
    CHECK(gate_distance(cz_to_cnot(comp.unitary), cnot_matrix()) < 1e-6);
  }
  // The third row sits in the excluded band of the construction.
  const auto& r3 = fixtures::table1()[2];
  const GateDesignU1 d3 = make_design_u1_fast(LaserParams{cplx(mhz(r3.omega_mhz), 0.0), mhz(r3.delta_mhz)},
                                              InteractionParams{mhz(r3.v_mhz)}, r3.n);
  CHECK_THROWS_AS(compose_cz_u1(gate_matrix_u1(d3), d3.alpha, d3.beta_gate), std::domain_error);
}

TEST_CASE("compose_cz_u2") {
  CHECK(gate_distance(compose_cz_u2(u2_ideal(0.0, 0.0, pi / 2), 0.0, 0.0), cz_matrix()) < 1e-12);
  for (const auto& row : fixtures::table2()) {
    const GateDesignU2 d =
        make_design_u2_fast(LaserParams{cplx(mhz(row.omega_c_mhz), 0.0), mhz(row.delta_c_mhz)},
                            LaserParams{cplx(mhz(row.omega_t_mhz), 0.0), mhz(row.delta_t_mhz)},
                            InteractionParams{mhz(row.v_mhz)}, row.n_c, row.n_t);
    const ComplexMatrix cz = compose_cz_u2(gate_matrix_u2(d), d.alpha, d.gamma);
    const double mismatch = std::abs(reduce_angle(d.beta - u2_target_beta(d)));
    CHECK(gate_distance(cz, cz_matrix()) < 2 * mismatch + 4 * std::sqrt(d.e_ro));
    CHECK(gate_distance(cz, cz_matrix()) < 1e-4);
  }
}

TEST_CASE("gate_distance") {
  const ComplexMatrix u = kron2(rotation_gate(Axis(1, 2, 3), 0.4).matrix, phase_gate(0.7).matrix);
  CHECK(gate_distance(ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(4, 4)) < 1e-12);
  CHECK(gate_distance(u, std::polar(1.0, 0.3) * u) < 1e-9);
  // Brute-force phase scan oracle.
  const ComplexMatrix cz = cz_matrix(), id = ComplexMatrix::Identity(4, 4);
  double best = 1e9;
  for (int k = 0; k < 10000; ++k) {
    const double phi = 2 * pi * k / 10000;
    best = std::min(best, Eigen::JacobiSVD<ComplexMatrix>(cz - std::polar(1.0, phi) * id).singularValues()(0));
  }
  const double d = gate_distance(cz, id);
  CHECK(d > 0.0);
  CHECK(d <= best + 1e-12);
  CHECK(d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK_THROWS(gate_distance(id, ComplexMatrix::Identity(2, 2)));
}
