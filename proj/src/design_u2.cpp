#include "rydgate/design_u2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "rydgate/design_u1.hpp"
#include "rydgate/parallel.hpp"
#include "rydgate/rng.hpp"
#include "rydgate/simplex.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix h_idle(const InteractionParams& v) {
  ComplexMatrix h = ComplexMatrix::Zero(basis::v2::dim, basis::v2::dim);
  h(basis::v2::k_rr, basis::v2::k_rr) = v.v;
  return h;
}

cplx single_pulse_amplitude(const LaserParams& l, double t) {
  const StateVector psi = propagate_const(h_single(l), basis_state(basis::single::dim, basis::single::k01), t);
  return psi(basis::single::k01);
}

double angle_mismatch(double angle, const std::vector<double>& targets) {
  double best = kPi;
  for (double t : targets) best = std::min(best, std::abs(reduce_angle(angle - t)));
  return best;
}

}  // namespace

U2Angles u2_angles(const LaserParams& lc, const LaserParams& lt, int n_c, int n_t) {
  return {alpha_angle(lc, n_c), alpha_angle(lt, n_t)};
}

StateVector evolve_pair(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v, double t_c,
                        double t_t, double control_start, double target_start) {
  std::vector<double> marks{control_start, control_start + t_c, target_start, target_start + t_t};
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  StateVector psi = basis_state(basis::v2::dim, basis::v2::k_11);
  for (std::size_t k = 0; k + 1 < marks.size(); ++k) {
    const double a = marks[k], b = marks[k + 1];
    const double mid = 0.5 * (a + b);
    const bool on_c = mid > control_start && mid < control_start + t_c;
    const bool on_t = mid > target_start && mid < target_start + t_t;
    const ComplexMatrix h = on_c && on_t ? h_v2(lc, lt, v) : on_c ? h_vc(lc, v) : on_t ? h_vt(lt, v) : h_idle(v);
    psi = propagate_const(h, psi, b - a);
  }
  return psi;
}

StagedEvolution evolve_11_staged(const GateDesignU2& d) {
  using namespace basis::v2;
  const bool control_first = d.t_c <= d.t_t;
  const double t_short = std::min(d.t_c, d.t_t);
  const double t_rest = std::abs(d.t_t - d.t_c);
  StateVector psi = propagate_const(h_v2(d.control, d.target, d.interaction), basis_state(dim, k_11), t_short);
  StagedEvolution out;
  out.p_rr = std::norm(psi(k_rr));
  out.p_stray = std::norm(psi(control_first ? k_r1 : k_1r));
  const ComplexMatrix tail = control_first ? h_vt(d.target, d.interaction) : h_vc(d.control, d.interaction);
  psi = propagate_const(tail, psi, t_rest);
  out.amplitude = psi(k_11);
  return out;
}

double beta_u2(const GateDesignU2& d) { return std::arg(evolve_11_staged(d).amplitude); }

double pedersen_error(const ComplexMatrix& target, const ComplexMatrix& actual) {
  if (target.rows() != 4 || target.cols() != 4 || actual.rows() != 4 || actual.cols() != 4) {
    throw std::invalid_argument("pedersen_error: both matrices must be 4x4");
  }
  const ComplexMatrix m = target.adjoint() * actual;
  const double overlap = std::norm(m.trace());
  const double purity = (m * m.adjoint()).trace().real();
  return 1.0 - (overlap + purity) / 20.0;
}

ComplexMatrix u2_ideal(double alpha, double gamma, double beta) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(basis::comp::k00, basis::comp::k00) = 1.0;
  u(basis::comp::k01, basis::comp::k01) = std::polar(1.0, gamma);
  u(basis::comp::k10, basis::comp::k10) = std::polar(1.0, alpha);
  u(basis::comp::k11, basis::comp::k11) = std::polar(1.0, beta);
  return u;
}

double u2_target_beta(const GateDesignU2& d) {
  const double base = d.alpha + d.gamma;
  const double offset = reduce_angle(d.beta - base) >= 0.0 ? 0.5 * kPi : -0.5 * kPi;
  return base + offset;
}

ComplexMatrix gate_matrix_u2(const GateDesignU2& d, double offset) {
  ComplexMatrix g = ComplexMatrix::Zero(4, 4);
  g(basis::comp::k00, basis::comp::k00) = 1.0;
  g(basis::comp::k01, basis::comp::k01) = single_pulse_amplitude(d.target, d.t_t);
  g(basis::comp::k10, basis::comp::k10) = single_pulse_amplitude(d.control, d.t_c);
  const bool control_first = d.t_c <= d.t_t;
  const StateVector psi = evolve_pair(d.control, d.target, d.interaction, d.t_c, d.t_t,
                                      control_first ? offset : 0.0, control_first ? 0.0 : offset);
  g(basis::comp::k11, basis::comp::k11) = psi(basis::v2::k_11);
  return g;
}

double rotation_error_u2(const GateDesignU2& d, double offset) {
  return pedersen_error(u2_ideal(d.alpha, d.gamma, u2_target_beta(d)), gate_matrix_u2(d, offset));
}

double decay_error(const GateDesignU2& d) {
  using namespace basis::v2;
  const double t_long = std::max(d.t_c, d.t_t);
  const ComplexMatrix h_pair = h_v2(d.control, d.target, d.interaction);
  const bool control_first = d.t_c <= d.t_t;
  const ComplexMatrix h_tail = control_first ? h_vt(d.target, d.interaction) : h_vc(d.control, d.interaction);
  const double dt = std::min({default_time_step(h_single(d.control), t_long),
                              default_time_step(h_single(d.target), t_long), default_time_step(h_pair, t_long),
                              default_time_step(h_tail, t_long)});

  Eigen::VectorXd w_single = Eigen::VectorXd::Zero(basis::single::dim);
  w_single(basis::single::k0r) = 1.0;
  StateVector s_t = basis_state(basis::single::dim, basis::single::k01);
  const double t_r01 = occupation_integral(h_single(d.target), s_t, d.t_t, w_single, step_count(0.0, d.t_t, dt));
  StateVector s_c = basis_state(basis::single::dim, basis::single::k01);
  const double t_r10 = occupation_integral(h_single(d.control), s_c, d.t_c, w_single, step_count(0.0, d.t_c, dt));

  Eigen::VectorXd w_pair = Eigen::VectorXd::Zero(dim);
  w_pair(k_rr) = 2.0;
  w_pair(k_r1) = 1.0;
  w_pair(k_1r) = 1.0;
  const double t_short = std::min(d.t_c, d.t_t);
  const double t_rest = t_long - t_short;
  StateVector psi = basis_state(dim, k_11);
  double t_r11 = occupation_integral(h_pair, psi, t_short, w_pair, step_count(0.0, t_short, dt));
  if (t_rest > 0.0) t_r11 += occupation_integral(h_tail, psi, t_rest, w_pair, step_count(0.0, t_rest, dt));
  return (t_r01 + t_r10 + t_r11) / 4.0;
}

GateDesignU2 make_design_u2_fast(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v, int n_c,
                                 int n_t) {
  GateDesignU2 d;
  d.control = lc;
  d.target = lt;
  d.interaction = v;
  d.n_c = n_c;
  d.n_t = n_t;
  d.t_c = gate_time(lc, n_c);
  d.t_t = gate_time(lt, n_t);
  const U2Angles ang = u2_angles(lc, lt, n_c, n_t);
  d.alpha = ang.alpha;
  d.gamma = ang.gamma;
  const StagedEvolution st = evolve_11_staged(d);
  d.beta = std::arg(st.amplitude);
  d.beta_reliable = std::abs(st.amplitude) >= 0.9;
  d.e_ro = rotation_error_u2(d);
  return d;
}

GateDesignU2 make_design_u2(const LaserParams& lc, const LaserParams& lt, const InteractionParams& v, int n_c,
                            int n_t) {
  GateDesignU2 d = make_design_u2_fast(lc, lt, v, n_c, n_t);
  d.e_de_per_tau = decay_error(d);
  return d;
}

double u2_objective(const GateDesignU2& d, const SearchU2Options& opt) {
  const StagedEvolution st = evolve_11_staged(d);
  const double mismatch = angle_mismatch(std::arg(st.amplitude) - d.alpha - d.gamma, opt.target_angles) / kTwoPi;
  return opt.weight_residual * (st.p_rr + st.p_stray) + opt.weight_deficit * (1.0 - std::norm(st.amplitude)) +
         opt.weight_angle * mismatch * mismatch;
}

std::vector<GateDesignU2> search_u2(const SearchU2Options& opt) {
  using units::mhz;
  using units::to_mhz;
  struct Pair {
    int n_c, n_t;
  };
  std::vector<Pair> pairs;
  for (int nc = opt.n_c_min; nc <= opt.n_c_max; ++nc) {
    for (int nt = opt.n_t_min; nt <= opt.n_t_max; ++nt) pairs.push_back({nc, nt});
  }
  const Eigen::Vector4d lo(to_mhz(opt.omega_c_lo), to_mhz(opt.delta_c_lo), to_mhz(opt.delta_t_lo), to_mhz(opt.v_lo));
  const Eigen::Vector4d hi(to_mhz(opt.omega_c_hi), to_mhz(opt.delta_c_hi), to_mhz(opt.delta_t_hi), to_mhz(opt.v_hi));
  const bool valid_box = (hi.array() >= lo.array()).all() && opt.starts > 0;
  const int tasks = valid_box ? static_cast<int>(pairs.size()) * opt.starts : 0;

  auto build = [&](const Eigen::VectorXd& x, const Pair& p) {
    const LaserParams lc{cplx(mhz(x(0)), 0.0), mhz(x(1))};
    const LaserParams lt{cplx(opt.omega_t, 0.0), mhz(x(2))};
    GateDesignU2 d;
    d.control = lc;
    d.target = lt;
    d.interaction = InteractionParams{mhz(x(3))};
    d.n_c = p.n_c;
    d.n_t = p.n_t;
    d.t_c = gate_time(lc, p.n_c);
    d.t_t = gate_time(lt, p.n_t);
    const U2Angles ang = u2_angles(lc, lt, p.n_c, p.n_t);
    d.alpha = ang.alpha;
    d.gamma = ang.gamma;
    return d;
  };

  std::vector<std::optional<GateDesignU2>> results(tasks);
  parallel_for(tasks, opt.workers, [&](int task) {
    const Pair p = pairs[task / opt.starts];
    Rng rng = make_rng(opt.seed, static_cast<std::uint64_t>(task));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd x0(4);
    for (int k = 0; k < 4; ++k) x0(k) = lo(k) + (hi(k) - lo(k)) * unit(rng);
    Eigen::VectorXd step = ((hi - lo) * 0.1).cwiseMax(0.01);
    auto objective = [&](const Eigen::VectorXd& x) {
      if (x(0) <= 0.0 || x(0) > to_mhz(opt.omega_t)) return 1e3;
      return u2_objective(build(x, p), opt);
    };
    SimplexOptions so;
    so.max_evals = opt.max_evals;
    so.x_tol = 1e-10;
    so.f_tol = 1e-24;
    const SimplexResult res = nelder_mead(objective, x0, step, so);
    const Eigen::VectorXd& x = res.x;
    if ((x.array() < lo.array()).any() || (x.array() > hi.array()).any()) return;
    const GateDesignU2 d = make_design_u2_fast(LaserParams{cplx(mhz(x(0)), 0.0), mhz(x(1))},
                                               LaserParams{cplx(opt.omega_t, 0.0), mhz(x(2))},
                                               InteractionParams{mhz(x(3))}, p.n_c, p.n_t);
    if (!(d.e_ro <= opt.max_e_ro)) return;
    results[task] = d;
  });

  std::vector<GateDesignU2> unique;
  for (const auto& r : results) {
    if (!r) continue;
    auto same = [&](const GateDesignU2& u) {
      return u.n_c == r->n_c && u.n_t == r->n_t &&
             std::abs(u.control.rabi_magnitude() - r->control.rabi_magnitude()) < mhz(1e-5) &&
             std::abs(u.control.detuning - r->control.detuning) < mhz(1e-5) &&
             std::abs(u.target.detuning - r->target.detuning) < mhz(1e-5) &&
             std::abs(u.interaction.v - r->interaction.v) < mhz(1e-5);
    };
    auto it = std::find_if(unique.begin(), unique.end(), same);
    if (it == unique.end()) {
      unique.push_back(*r);
    } else if (r->e_ro < it->e_ro) {
      *it = *r;
    }
  }
  parallel_for(static_cast<int>(unique.size()), opt.workers,
               [&](int i) { unique[i].e_de_per_tau = decay_error(unique[i]); });
  std::vector<GateDesignU2> out;
  for (const auto& d : unique) {
    if (d.e_de_per_tau <= opt.max_e_de) out.push_back(d);
  }
  std::stable_sort(out.begin(), out.end(), [](const GateDesignU2& a, const GateDesignU2& b) {
    if (a.e_de_per_tau != b.e_de_per_tau) return a.e_de_per_tau < b.e_de_per_tau;
    return a.e_ro < b.e_ro;
  });
  return out;
}

}  // namespace rydgate
