#include "rydgate/model.hpp"

#include <cmath>
#include <numbers>

namespace rydgate {

namespace {

using basis::Level;

// Sets the (row, col) coupling and its Hermitian partner.
void couple(ComplexMatrix& h, int row, int col, cplx value) {
  h(row, col) += value;
  h(col, row) += std::conj(value);
}

ComplexMatrix ladder_atom(const LaserParams& l) {
  ComplexMatrix h = ComplexMatrix::Zero(basis::ladder_dim, basis::ladder_dim);
  couple(h, 2, 1, 0.5 * l.rabi);
  h(2, 2) = l.detuning;
  return h;
}

ComplexMatrix leak_atom(const LeakageSpec& leak, const LaserParams& l) {
  ComplexMatrix h = ComplexMatrix::Zero(basis::atom_dim, basis::atom_dim);
  const int g0 = basis::index(Level::g0), g1 = basis::index(Level::g1), r = basis::index(Level::r),
            d = basis::index(Level::d), s = basis::index(Level::s);
  couple(h, r, g1, 0.5 * l.rabi);
  couple(h, d, g1, 0.5 * leak.ratio_d * l.rabi);
  couple(h, s, g0, 0.5 * leak.ratio_s * l.rabi);
  h(r, r) = l.detuning;
  h(d, d) = leak.detuning_d;
  h(s, s) = leak.detuning_s;
  return h;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

InteractionParams InteractionParams::from_c6(double c6, double spacing_um) {
  if (!(spacing_um > 0.0)) {
    throw std::invalid_argument("InteractionParams: spacing must be positive");
  }
  InteractionParams p;
  p.c6 = c6;
  p.spacing = spacing_um;
  p.v = c6 / std::pow(spacing_um, 6);
  return p;
}

void InteractionParams::validate() const {
  if (c6 && spacing) {
    const double expected = *c6 / std::pow(*spacing, 6);
    if (std::abs(v - expected) > 1e-9 * std::abs(v)) {
      throw std::invalid_argument("InteractionParams: V disagrees with C6/L^6");
    }
  }
}

ComplexMatrix h_single(const LaserParams& l) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(basis::single::k0r, basis::single::k0r) = l.detuning;
  couple(h, basis::single::k0r, basis::single::k01, 0.5 * l.rabi);
  return h;
}

ComplexMatrix h_v1(const LaserParams& l, const InteractionParams& v) {
  using namespace basis::v1;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  const cplx w = l.rabi / std::numbers::sqrt2;
  h(k_rr, k_rr) = v.v + 2.0 * l.detuning;
  h(k_bright, k_bright) = l.detuning;
  couple(h, k_rr, k_bright, w);
  couple(h, k_bright, k_11, w);
  return h;
}

ComplexMatrix h_v2(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v) {
  using namespace basis::v2;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  h(k_rr, k_rr) = v.v + lc.detuning + lt.detuning;
  h(k_r1, k_r1) = lc.detuning;
  h(k_1r, k_1r) = lt.detuning;
  couple(h, k_rr, k_r1, 0.5 * lt.rabi);
  couple(h, k_rr, k_1r, 0.5 * lc.rabi);
  couple(h, k_r1, k_11, 0.5 * lc.rabi);
  couple(h, k_1r, k_11, 0.5 * lt.rabi);
  return h;
}

ComplexMatrix h_vt(const LaserParams& lt, const InteractionParams& v) {
  using namespace basis::v2;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  h(k_rr, k_rr) = v.v + lt.detuning;
  h(k_1r, k_1r) = lt.detuning;
  couple(h, k_rr, k_r1, 0.5 * lt.rabi);
  couple(h, k_1r, k_11, 0.5 * lt.rabi);
  return h;
}

ComplexMatrix h_vc(const LaserParams& lc, const InteractionParams& v) {
  using namespace basis::v2;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  h(k_rr, k_rr) = v.v + lc.detuning;
  h(k_r1, k_r1) = lc.detuning;
  couple(h, k_rr, k_1r, 0.5 * lc.rabi);
  couple(h, k_r1, k_11, 0.5 * lc.rabi);
  return h;
}

ComplexMatrix h_vt_reduced(const LaserParams& lt) {
  using namespace basis::vt_reduced;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  h(k_1r, k_1r) = lt.detuning;
  couple(h, k_1r, k_11, 0.5 * lt.rabi);
  return h;
}

ComplexMatrix h_two_atom(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v) {
  const ComplexMatrix id = ComplexMatrix::Identity(basis::ladder_dim, basis::ladder_dim);
  ComplexMatrix h = kron(ladder_atom(lc), id) + kron(id, ladder_atom(lt));
  const int rr = basis::ladder_pair(2, 2);
  h(rr, rr) += v.v;
  return h;
}

ComplexMatrix h_leak_two_atom(const LeakageSpec& leak, const LaserParams& lc, const LaserParams& lt,
                              const InteractionParams& v) {
  if (leak.ordering != basis::atom_order) {
    throw std::invalid_argument("h_leak_two_atom: per-atom basis must be ordered {0, 1, r, d, s, a}");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(basis::atom_dim, basis::atom_dim);
  ComplexMatrix h = kron(leak_atom(leak, lc), id) + kron(id, leak_atom(leak, lt));
  const int rr = basis::pair(Level::r, Level::r);
  h(rr, rr) += v.v;
  return h;
}

}  // namespace rydgate
