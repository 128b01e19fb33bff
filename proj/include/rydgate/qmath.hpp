#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace rydgate {

template <typename Scalar>
using MatrixC = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorC = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using ComplexMatrix = MatrixC<double>;
using StateVector = VectorC<double>;
using Vec3 = Eigen::Vector3d;

inline constexpr cplx I{0.0, 1.0};

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() < rel_tol * scale;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& a, double tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  using Plain = typename Derived::PlainObject;
  const Plain prod = a.adjoint() * a;
  return (prod - Plain::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() < tol;
}

// Canonical basis vector |k> of dimension n.
inline StateVector basis_state(Eigen::Index n, Eigen::Index k) {
  StateVector v = StateVector::Zero(n);
  v(k) = 1.0;
  return v;
}

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // columns, first significant component real-positive
};

// Throws std::invalid_argument for a non-Hermitian input.
EigenSystem eig_numeric(const ComplexMatrix& h);

template <typename Scalar>
struct ShengjinRoots {
  std::array<Scalar, 3> eps{};
  Scalar a_coef{};  // 𝒜
  Scalar b_coef{};  // ℬ
  Scalar theta{};
  bool degenerate = false;
};

// Closed-form eigenvalues of the symmetric blockade matrix
// [[V+2Δ, Ω/√2, 0], [Ω*/√2, Δ, Ω/√2], [0, Ω*/√2, 0]].
template <typename Scalar>
ShengjinRoots<Scalar> eig3_shengjin(Scalar rabi, Scalar detuning, Scalar interaction) {
  using std::acos;
  using std::cos;
  using std::sqrt;
  const Scalar w2 = rabi * rabi;
  const Scalar d = detuning;
  const Scalar v = interaction;
  const Scalar third = Scalar(1) / Scalar(3);
  const Scalar pi = std::numbers::pi_v<Scalar>;

  ShengjinRoots<Scalar> out;
  const Scalar a2 = v * v + Scalar(3) * (w2 + d * d + v * d);
  out.a_coef = a2 > Scalar(0) ? sqrt(a2) : Scalar(0);
  const Scalar s = v + Scalar(3) * d;
  out.b_coef = Scalar(27) * w2 * (v / Scalar(2) + d) + Scalar(9) * s * (Scalar(2) * d * d + v * d - w2) -
               Scalar(2) * s * s * s;
  if (out.a_coef == Scalar(0)) {
    out.degenerate = true;
    out.eps.fill(d + v * third);
    return out;
  }
  Scalar arg = out.b_coef / (Scalar(2) * out.a_coef * out.a_coef * out.a_coef);
  if (arg > Scalar(1) + Scalar(1e-9) || arg < Scalar(-1) - Scalar(1e-9)) {
    throw std::domain_error("eig3_shengjin: arccos argument outside [-1, 1]");
  }
  arg = std::clamp(arg, Scalar(-1), Scalar(1));
  out.theta = acos(arg) * third;
  const Scalar a = out.a_coef;
  out.eps[0] = d + (v - Scalar(2) * a * cos(out.theta)) * third;
  out.eps[1] = d + (v + Scalar(2) * a * cos(out.theta + pi * third)) * third;
  out.eps[2] = d + (v + Scalar(2) * a * cos(out.theta - pi * third)) * third;
  return out;
}

// Reads (|Ω|, Δ, V) from a matrix of the blockade form; rejects anything else.
ShengjinRoots<double> eig3_shengjin(const ComplexMatrix& h_v1);

// exp(-i H t) for Hermitian H.
ComplexMatrix propagator(const ComplexMatrix& h, double t);

StateVector propagate_const(const ComplexMatrix& h, const StateVector& psi, double t);

using Schedule = std::function<ComplexMatrix(double)>;
using StepObserver = std::function<void(double, const StateVector&)>;

// Midpoint exponential stepping on a uniform grid covering [t0, t1].
StateVector propagate_steps(const Schedule& h_of_t, StateVector psi, double t0, double t1, double dt,
                            const StepObserver& observe = {});

// Number of uniform steps used for [t0, t1] at nominal step dt.
int step_count(double t0, double t1, double dt);

// min(1/(50·max|λ|/2π), t_gate/5000).
double default_time_step(const ComplexMatrix& h, double t_gate);

// Trapezoid estimate of ∫₀ᵗ Σ_i w_i |<i|ψ(s)>|² ds under constant Hermitian H,
// sampled on n uniform intervals. Returns the integral; psi is advanced to t.
double occupation_integral(const ComplexMatrix& h, StateVector& psi, double t, const Eigen::VectorXd& weights,
                           int n);

// exp(A) for a general square matrix.
ComplexMatrix expm(const ComplexMatrix& a);

// Connected components of the coupling graph of H (nonzero off-diagonals).
std::vector<std::vector<int>> invariant_blocks(const ComplexMatrix& h);

// exp(-i H dt) evaluated block by block over a fixed block structure.
class BlockPropagator {
 public:
  explicit BlockPropagator(std::vector<std::vector<int>> blocks);

  // Rebuilds the per-block exponentials of -i H dt. H may be non-Hermitian.
  void set(const ComplexMatrix& h, double dt);
  // Restricts updates to blocks containing any of the given indices.
  void set_active(const std::vector<int>& indices);
  void apply(StateVector& psi) const;
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<ComplexMatrix> exps_;
  std::vector<char> active_;
};

}  // namespace rydgate
