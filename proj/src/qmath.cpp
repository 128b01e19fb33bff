#include "rydgate/qmath.hpp"

#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace rydgate {

EigenSystem eig_numeric(const ComplexMatrix& h) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("eig_numeric: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_numeric: eigensolver did not converge");
  }
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < es.vectors.cols(); ++k) {
    auto col = es.vectors.col(k);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > 1e-8) {
        col *= std::conj(col(i)) / mag;
        break;
      }
    }
  }
  return es;
}

ShengjinRoots<double> eig3_shengjin(const ComplexMatrix& h) {
  if (h.rows() != 3 || h.cols() != 3 || !is_hermitian(h)) {
    throw std::invalid_argument("eig3_shengjin: expected a 3x3 Hermitian matrix");
  }
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1.0);
  const double tol = 1e-12 * scale;
  const cplx c01 = h(0, 1);
  const cplx c12 = h(1, 2);
  const double detuning = h(1, 1).real();
  const bool shaped = std::abs(h(0, 2)) < tol && std::abs(h(2, 2)) < tol && std::abs(c01 - c12) < tol &&
                      std::abs(h(0, 0).imag()) < tol && std::abs(h(1, 1).imag()) < tol;
  if (!shaped) {
    throw std::invalid_argument("eig3_shengjin: matrix does not have the blockade structure");
  }
  const double rabi = std::abs(c01) * std::numbers::sqrt2;
  const double interaction = h(0, 0).real() - 2.0 * detuning;
  return eig3_shengjin<double>(rabi, detuning, interaction);
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) {
  const EigenSystem es = eig_numeric(h);
  const Eigen::VectorXcd phases = (-I * t * es.values.cast<cplx>()).array().exp();
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

StateVector propagate_const(const ComplexMatrix& h, const StateVector& psi, double t) {
  if (h.rows() != psi.size()) {
    throw std::invalid_argument("propagate_const: dimension mismatch");
  }
  const EigenSystem es = eig_numeric(h);
  const Eigen::VectorXcd phases = (-I * t * es.values.cast<cplx>()).array().exp();
  const StateVector coeffs = es.vectors.adjoint() * psi;
  return es.vectors * phases.cwiseProduct(coeffs);
}

int step_count(double t0, double t1, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step_count: dt must be positive");
  }
  const double span = t1 - t0;
  if (span <= 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
}

StateVector propagate_steps(const Schedule& h_of_t, StateVector psi, double t0, double t1, double dt,
                            const StepObserver& observe) {
  const int n = step_count(t0, t1, dt);
  if (observe) observe(t0, psi);
  if (n == 0) return psi;
  const double h = (t1 - t0) / n;
  for (int k = 0; k < n; ++k) {
    const double t = t0 + k * h;
    psi = propagator(h_of_t(t + 0.5 * h), h) * psi;
    if (observe) observe(t0 + (k + 1) * h, psi);
  }
  return psi;
}

double default_time_step(const ComplexMatrix& h, double t_gate) {
  const double cap = t_gate / 5000.0;
  const double lam = eig_numeric(h).values.cwiseAbs().maxCoeff();
  if (lam == 0.0) return cap;
  return std::min(cap, 1.0 / (50.0 * lam / (2.0 * std::numbers::pi)));
}

ComplexMatrix expm(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("expm: matrix must be square");
  }
  return a.exp();
}

std::vector<std::vector<int>> invariant_blocks(const ComplexMatrix& h) {
  const int n = static_cast<int>(h.rows());
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> blocks;
  for (int start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(blocks.size());
    std::vector<int> members{start};
    label[start] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const int i = members[head];
      for (int j = 0; j < n; ++j) {
        if (label[j] < 0 && (h(i, j) != 0.0 || h(j, i) != 0.0)) {
          label[j] = id;
          members.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    blocks.push_back(std::move(members));
  }
  return blocks;
}

BlockPropagator::BlockPropagator(std::vector<std::vector<int>> blocks)
    : blocks_(std::move(blocks)), exps_(blocks_.size()), active_(blocks_.size(), 1) {}

void BlockPropagator::set_active(const std::vector<int>& indices) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    active_[b] = 0;
    for (int i : indices) {
      if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), i)) active_[b] = 1;
    }
  }
}

void BlockPropagator::set(const ComplexMatrix& h, double dt) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (!active_[b]) continue;
    const auto& idx = blocks_[b];
    const auto n = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix sub(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = h(idx[r], idx[c]);
    }
    if (n == 1) {
      exps_[b] = ComplexMatrix::Constant(1, 1, std::exp(-I * dt * sub(0, 0)));
    } else {
      exps_[b] = (-I * dt * sub).exp();
    }
  }
}

void BlockPropagator::apply(StateVector& psi) const {
  StateVector local;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (!active_[b]) continue;
    const auto& idx = blocks_[b];
    const auto n = static_cast<Eigen::Index>(idx.size());
    local.resize(n);
    bool any = false;
    for (Eigen::Index r = 0; r < n; ++r) {
      local(r) = psi(idx[r]);
      any = any || local(r) != 0.0;
    }
    if (!any) continue;
    local = exps_[b] * local;
    for (Eigen::Index r = 0; r < n; ++r) psi(idx[r]) = local(r);
  }
}

double occupation_integral(const ComplexMatrix& h, StateVector& psi, double t, const Eigen::VectorXd& weights,
                           int n) {
  if (n < 1) {
    throw std::invalid_argument("occupation_integral: need at least one interval");
  }
  const EigenSystem es = eig_numeric(h);
  const StateVector coeffs = es.vectors.adjoint() * psi;
  const double dt = t / n;
  const Eigen::VectorXcd step = (-I * dt * es.values.cast<cplx>()).array().exp();
  Eigen::VectorXcd c = coeffs;
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const StateVector state = es.vectors * c;
    const double occ = weights.dot(state.cwiseAbs2());
    total += (k == 0 || k == n) ? 0.5 * occ : occ;
    if (k < n) c = c.cwiseProduct(step);
  }
  psi = es.vectors * ((-I * t * es.values.cast<cplx>()).array().exp().matrix().cwiseProduct(coeffs));
  return total * dt;
}

}  // namespace rydgate
