#include "rydgate/design_u1.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "rydgate/parallel.hpp"
#include "rydgate/simplex.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 1/4 − |<11|ψ>|²/4 written through the leaked population, which keeps
// full relative precision when the leak is tiny.
double leaked_quarter(const StateVector& psi) {
  return 0.25 * (std::norm(psi(basis::v1::k_rr)) + std::norm(psi(basis::v1::k_bright)));
}

std::array<int, 3> round_cycles(const StarkFrequencies& s, double tg) {
  std::array<int, 3> m{};
  for (int k = 0; k < 3; ++k) m[k] = static_cast<int>(std::lround(tg * s.c[k] / kTwoPi));
  return m;
}

}  // namespace

double reduce_angle(double phi) {
  double r = std::remainder(phi, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double wrap_positive(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double gate_time(const LaserParams& l, int n) {
  if (n < 1) {
    throw std::invalid_argument("gate_time: N must be at least 1");
  }
  const double wbar = l.generalized_rabi();
  if (wbar == 0.0) {
    throw std::invalid_argument("gate_time: generalized Rabi frequency is zero");
  }
  return 2.0 * n * kPi / wbar;
}

double alpha_angle(const LaserParams& l, int n) {
  const double wbar = l.generalized_rabi();
  if (wbar == 0.0) {
    throw std::invalid_argument("alpha_angle: generalized Rabi frequency is zero");
  }
  return -n * kPi * (1.0 + l.detuning / wbar);
}

StarkFrequencies stark_frequencies(const LaserParams& l, const InteractionParams& v) {
  const auto roots = eig3_shengjin<double>(l.rabi_magnitude(), l.detuning, v.v);
  StarkFrequencies s;
  s.degenerate = roots.degenerate;
  const double a = roots.a_coef;
  s.c[0] = 2.0 * a * std::cos(roots.theta) / 3.0;
  s.c[1] = -2.0 * a * std::cos(roots.theta + kPi / 3.0) / 3.0;
  s.c[2] = -2.0 * a * std::cos(roots.theta - kPi / 3.0) / 3.0;
  return s;
}

double beta_propagated(const LaserParams& l, const InteractionParams& v, double t) {
  const StateVector psi =
      propagate_const(h_v1(l, v), basis_state(basis::v1::dim, basis::v1::k_11), t);
  return std::arg(psi(basis::v1::k_11));
}

GateDesignU1 make_design_u1_fast(const LaserParams& l, const InteractionParams& v, int n) {
  GateDesignU1 d;
  d.laser = l;
  d.interaction = v;
  d.n = n;
  d.gate_time = gate_time(l, n);
  d.alpha = alpha_angle(l, n);
  d.m = round_cycles(stark_frequencies(l, v), d.gate_time);
  d.beta = beta_angle(d);
  const StateVector psi =
      propagate_const(h_v1(l, v), basis_state(basis::v1::dim, basis::v1::k_11), d.gate_time);
  d.beta_gate = std::arg(psi(basis::v1::k_11));
  d.e_ro = leaked_quarter(psi);
  return d;
}

GateDesignU1 make_design_u1(const LaserParams& l, const InteractionParams& v, int n) {
  GateDesignU1 d = make_design_u1_fast(l, v, n);
  d.e_de_per_tau = decay_error(d);
  return d;
}

std::array<double, 3> resonance_residuals(const GateDesignU1& d) {
  const StarkFrequencies s = stark_frequencies(d.laser, d.interaction);
  std::array<double, 3> r{};
  for (int k = 0; k < 3; ++k) r[k] = d.gate_time * s.c[k] / kTwoPi - d.m[k];
  return r;
}

double beta_angle(const GateDesignU1& d) {
  return -(d.laser.detuning + d.interaction.v / 3.0) * d.gate_time;
}

double rotation_error_u1(const GateDesignU1& d) {
  const StateVector psi = propagate_const(h_v1(d.laser, d.interaction),
                                          basis_state(basis::v1::dim, basis::v1::k_11), d.gate_time);
  return leaked_quarter(psi);
}

double decay_error(const GateDesignU1& d) {
  const ComplexMatrix hs = h_single(d.laser);
  const ComplexMatrix hv = h_v1(d.laser, d.interaction);
  const double dt = std::min(default_time_step(hs, d.gate_time), default_time_step(hv, d.gate_time));
  const int n = step_count(0.0, d.gate_time, dt);

  StateVector single = basis_state(basis::single::dim, basis::single::k01);
  Eigen::VectorXd w_single = Eigen::VectorXd::Zero(basis::single::dim);
  w_single(basis::single::k0r) = 1.0;
  const double t_r_single = occupation_integral(hs, single, d.gate_time, w_single, n);

  StateVector pair = basis_state(basis::v1::dim, basis::v1::k_11);
  Eigen::VectorXd w_pair = Eigen::VectorXd::Zero(basis::v1::dim);
  w_pair(basis::v1::k_bright) = 1.0;
  w_pair(basis::v1::k_rr) = 2.0;
  const double t_r_pair = occupation_integral(hv, pair, d.gate_time, w_pair, n);

  return (2.0 * t_r_single + t_r_pair) / 4.0;
}

ComplexMatrix gate_matrix_u1(const LaserParams& l, const InteractionParams& v, double t) {
  const ComplexMatrix u = propagator(h_two_atom(l, l, v), t);
  ComplexMatrix g(basis::comp::dim, basis::comp::dim);
  for (int r = 0; r < basis::comp::dim; ++r) {
    for (int c = 0; c < basis::comp::dim; ++c) {
      g(r, c) = u(basis::comp_to_ladder(r), basis::comp_to_ladder(c));
    }
  }
  return g;
}

ComplexMatrix gate_matrix_u1(const GateDesignU1& d) {
  return gate_matrix_u1(d.laser, d.interaction, d.gate_time);
}

ComplexMatrix u1_ideal(double alpha, double beta) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, alpha);
  u(2, 2) = std::polar(1.0, alpha);
  u(3, 3) = std::polar(1.0, beta);
  return u;
}

std::vector<GateDesignU1> search_u1(const SearchU1Options& opt) {
  using units::mhz;
  using units::to_mhz;
  const double step = opt.grid_step > 0.0 ? opt.grid_step : mhz(0.05);
  const int nd = opt.delta_hi >= opt.delta_lo ? static_cast<int>(std::floor((opt.delta_hi - opt.delta_lo) / step + 1e-9)) + 1 : 0;
  const int nv = opt.v_hi >= opt.v_lo ? static_cast<int>(std::floor((opt.v_hi - opt.v_lo) / step + 1e-9)) + 1 : 0;
  const int n_levels = std::max(0, opt.n_max - opt.n_min + 1);
  const int tasks = nd * n_levels;

  std::vector<std::vector<GateDesignU1>> found(tasks);
  parallel_for(tasks, opt.workers, [&](int task) {
    const int n = opt.n_min + task / nd;
    const double delta0 = opt.delta_lo + (task % nd) * step;
    for (int j = 0; j < nv; ++j) {
      const double v0 = opt.v_lo + j * step;
      const LaserParams l0{cplx(opt.omega, 0.0), delta0};
      const StarkFrequencies s0 = stark_frequencies(l0, InteractionParams{v0});
      if (s0.degenerate) continue;
      const double tg0 = gate_time(l0, n);
      const std::array<int, 3> m = round_cycles(s0, tg0);
      if (m[0] + m[1] + m[2] != 0) continue;
      double worst = 0.0;
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(tg0 * s0.c[k] / kTwoPi - m[k]));
      if (worst > opt.seed_cycles) continue;

      // Refine in MHz coordinates; r3 follows from the trace identity.
      auto objective = [&](const Eigen::VectorXd& x) {
        const LaserParams l{cplx(opt.omega, 0.0), mhz(x(0))};
        const StarkFrequencies s = stark_frequencies(l, InteractionParams{mhz(x(1))});
        const double tg = gate_time(l, n);
        const double r1 = tg * s.c[0] / kTwoPi - m[0];
        const double r2 = tg * s.c[1] / kTwoPi - m[1];
        return r1 * r1 + r2 * r2;
      };
      SimplexOptions so;
      so.f_target = opt.tol_cycles * opt.tol_cycles;
      so.x_tol = 1e-13;
      so.max_evals = 3000;
      const SimplexResult res =
          nelder_mead(objective, Eigen::Vector2d(to_mhz(delta0), to_mhz(v0)), Eigen::Vector2d(0.01, 0.01), so);
      const double delta = mhz(res.x(0));
      const double v = mhz(res.x(1));
      if (delta < opt.delta_lo || delta > opt.delta_hi || v < opt.v_lo || v > opt.v_hi) continue;
      GateDesignU1 d = make_design_u1_fast(LaserParams{cplx(opt.omega, 0.0), delta}, InteractionParams{v}, n);
      if (d.m != m || !(d.e_ro <= opt.max_e_ro)) continue;
      found[task].push_back(d);
    }
  });

  // Collapse repeated convergence onto the same root before the decay integral.
  std::vector<GateDesignU1> unique;
  for (const auto& bucket : found) {
    for (const auto& d : bucket) {
      const bool seen = std::any_of(unique.begin(), unique.end(), [&](const GateDesignU1& u) {
        return u.n == d.n && u.m == d.m && std::abs(u.laser.detuning - d.laser.detuning) < mhz(1e-6) &&
               std::abs(u.interaction.v - d.interaction.v) < mhz(1e-6);
      });
      if (!seen) unique.push_back(d);
    }
  }
  parallel_for(static_cast<int>(unique.size()), opt.workers,
               [&](int i) { unique[i].e_de_per_tau = decay_error(unique[i]); });

  std::map<std::tuple<int, int, int, int>, GateDesignU1> best;
  for (const auto& d : unique) {
    if (!(d.e_de_per_tau <= opt.max_e_de)) continue;
    const auto key = std::make_tuple(d.n, d.m[0], d.m[1], d.m[2]);
    auto it = best.find(key);
    if (it == best.end() || d.e_ro < it->second.e_ro ||
        (d.e_ro == it->second.e_ro && d.laser.detuning < it->second.laser.detuning)) {
      best[key] = d;
    }
  }
  std::vector<GateDesignU1> out;
  for (const auto& [key, d] : best) out.push_back(d);
  std::stable_sort(out.begin(), out.end(), [](const GateDesignU1& a, const GateDesignU1& b) {
    return a.e_de_per_tau < b.e_de_per_tau;
  });
  return out;
}

double leakage_estimate(double omega, double delta, double y) {
  const double wbar = std::hypot(omega, delta);
  if (wbar == 0.0) return 0.0;
  const double x = std::abs(omega) / wbar;
  if (x == 0.0) return 0.0;
  const double amp = x * std::sin(y / x);
  return amp * amp;
}

}  // namespace rydgate
