// One PASS/FAIL line per acceptance criterion; exit 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "angular_oracle.hpp"
#include "rydgate/angular.hpp"
#include "rydgate/atomic.hpp"
#include "rydgate/design_u1.hpp"
#include "rydgate/design_u2.hpp"
#include "rydgate/fixtures.hpp"
#include "rydgate/model.hpp"
#include "rydgate/noise.hpp"
#include "rydgate/qmath.hpp"
#include "rydgate/repro.hpp"
#include "rydgate/synth.hpp"
#include "rydgate/units.hpp"

using namespace rydgate;
using units::mhz;
using units::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
  }
};

std::string num(double x, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

int worker_count() {
  if (const char* env = std::getenv("RYDGATE_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void report_rows(Outcome& o, const std::vector<repro::RowReport>& rows) {
  for (const auto& r : rows) {
    for (const auto& c : r.checks) {
      o.require(c.pass, r.label + ", " + c.name + ": " + c.computed + " [expected " + c.expected + "]");
    }
  }
}

Outcome criterion1() {
  Outcome o;
  report_rows(o, repro::check_table1(true));
  return o;
}

Outcome criterion2() {
  Outcome o;
  report_rows(o, repro::check_table2());
  return o;
}

Outcome criterion3(int workers) {
  Outcome o;
  const auto& row1 = fixtures::table1()[0];
  SearchU1Options s1;
  s1.omega = mhz(row1.omega_mhz);
  s1.delta_lo = mhz(row1.delta_mhz - 1.0);
  s1.delta_hi = mhz(row1.delta_mhz + 1.0);
  s1.v_lo = mhz(row1.v_mhz - 1.0);
  s1.v_hi = mhz(row1.v_mhz + 1.0);
  s1.n_min = s1.n_max = row1.n;
  s1.workers = workers;
  const auto found1 = search_u1(s1);
  const auto hit1 = std::find_if(found1.begin(), found1.end(), [&](const GateDesignU1& d) { return d.m == row1.m; });
  o.require(hit1 != found1.end(), "search_u1 returns a design with M = (2, 1, -3)");
  if (hit1 != found1.end()) {
    const double delta = units::to_mhz(hit1->laser.detuning), v = units::to_mhz(hit1->interaction.v);
    o.require(std::abs(delta - row1.delta_mhz) <= 1e-4, "Delta/2pi = " + num(delta, 10) + " vs " + num(row1.delta_mhz));
    o.require(std::abs(v - row1.v_mhz) <= 1e-4, "V/2pi = " + num(v, 10) + " vs " + num(row1.v_mhz));
  }

  const auto& row2 = fixtures::table2()[0];
  SearchU2Options s2;
  s2.omega_t = mhz(row2.omega_t_mhz);
  s2.omega_c_lo = mhz(row2.omega_c_mhz - 0.1);
  s2.omega_c_hi = mhz(row2.omega_c_mhz + 0.1);
  s2.delta_c_lo = mhz(row2.delta_c_mhz - 0.1);
  s2.delta_c_hi = mhz(row2.delta_c_mhz + 0.1);
  s2.delta_t_lo = mhz(row2.delta_t_mhz - 0.1);
  s2.delta_t_hi = mhz(row2.delta_t_mhz + 0.1);
  s2.v_lo = mhz(row2.v_mhz - 0.1);
  s2.v_hi = mhz(row2.v_mhz + 0.1);
  s2.n_c_min = s2.n_c_max = row2.n_c;
  s2.n_t_min = s2.n_t_max = row2.n_t;
  s2.seed = 7;
  s2.workers = workers;
  const auto found2 = search_u2(s2);
  o.require(!found2.empty(), "search_u2 returns a design near Table 2 case 1");
  if (!found2.empty()) {
    const GateDesignU2& d = found2.front();
    const std::array<std::pair<const char*, std::pair<double, double>>, 5> params = {{
        {"Omega_c/2pi", {units::to_mhz(std::abs(d.control.rabi)), row2.omega_c_mhz}},
        {"Delta_c/2pi", {units::to_mhz(d.control.detuning), row2.delta_c_mhz}},
        {"Omega_t/2pi", {units::to_mhz(std::abs(d.target.rabi)), row2.omega_t_mhz}},
        {"Delta_t/2pi", {units::to_mhz(d.target.detuning), row2.delta_t_mhz}},
        {"V/2pi", {units::to_mhz(d.interaction.v), row2.v_mhz}},
    }};
    for (const auto& [name, vals] : params) {
      o.require(std::abs(vals.first - vals.second) <= 1e-4,
                std::string(name) + " = " + num(vals.first, 10) + " vs " + num(vals.second, 10));
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const ComplexMatrix cz = cz_matrix();
  for (int k : {0, 1}) {
    const GateDesignU1 d = repro::design_from(fixtures::table1()[k], false);
    const CzComposite c = compose_cz_u1_detailed(gate_matrix_u1(d), d.alpha, d.beta_gate);
    const double dist = gate_distance(c.unitary, cz);
    const int uses = k == 0 ? 4 : 2;
    o.require(c.u1_uses == uses && dist < 1e-4, "Table 1 case " + std::to_string(k + 1) + ": " +
                                                    std::to_string(c.u1_uses) + " U1 uses, distance " + num(dist, 3));
    const double perfect = gate_distance(compose_cz_u1(u1_ideal(d.alpha, d.beta_gate), d.alpha, d.beta_gate), cz);
    o.require(perfect < 1e-9, "  formula-perfect U1 input: distance " + num(perfect, 3));
  }
  int index = 0;
  for (const auto& row : fixtures::table2()) {
    ++index;
    const GateDesignU2 d = repro::design_from(row, false);
    const double dist = gate_distance(compose_cz_u2(gate_matrix_u2(d), d.alpha, d.gamma), cz);
    o.require(dist < 1e-4, "Table 2 row " + std::to_string(index) + ": distance " + num(dist, 3));
    const ComplexMatrix ideal = u2_ideal(d.alpha, d.gamma, u2_target_beta(d));
    const double perfect = gate_distance(compose_cz_u2(ideal, d.alpha, d.gamma), cz);
    o.require(perfect < 1e-9, "  formula-perfect U2 input: distance " + num(perfect, 3));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const GateDesignU1 d = repro::design_from(fixtures::table3(), false);
  const auto& ref = fixtures::pulse_edge();
  const double edge = units::ns(ref.edge_ns);
  const double loss = edge_loss(d, d.gate_time, edge);
  o.require(std::abs(loss - ref.loss_at_tg) <= 0.3 * ref.loss_at_tg,
            "loss at t_g = " + num(loss) + " [expected " + num(ref.loss_at_tg) + " ± 30%]");
  const PulseOptimization po = optimize_pulse_duration(d, edge);
  o.require(std::abs(units::to_ns(po.t_op) - ref.t_op_ns) <= 1.0,
            "t_op = " + num(units::to_ns(po.t_op), 9) + " ns [expected " + num(ref.t_op_ns, 9) + " ± 1]");
  o.require(po.loss < 1e-8, "loss at t_op = " + num(po.loss, 3) + " [expected < 1e-8]");
  const std::array<double, 3> angles = {po.alpha, po.beta, reduce_angle(po.beta - 2.0 * po.alpha)};
  const char* names[] = {"alpha/pi", "beta/pi", "(beta-2alpha)/pi"};
  for (int k = 0; k < 3; ++k) {
    const double x = angles[k] / pi;
    o.require(std::abs(x - ref.angles_over_pi[k]) <= 1e-4,
              std::string(names[k]) + " = " + num(x, 8) + " [expected " + num(ref.angles_over_pi[k], 8) + " ± 1e-4]");
  }
  return o;
}

Outcome criterion6(int workers) {
  Outcome o;
  const GateDesignU1 d = repro::design_from(fixtures::table3());
  NoiseScenario s = thermal_scenario(0.0, DriftMode::none);
  s.lifetime = units::us(1e3 * fixtures::noise_reference().lifetime_ms);
  s.seed = 6;
  const double expected = fixtures::noise_reference().decay_error;
  const double nh = nonhermitian_loss_average(s, d);
  o.require(std::abs(nh - expected) <= 0.2 * expected,
            "non-Hermitian loss = " + num(nh) + " [expected " + num(expected) + " ± 20%]");
  const int n = 10000;
  const McwfSummary m =
      mcwf_loss(s, d, {basis::comp::k00, basis::comp::k01, basis::comp::k10, basis::comp::k11}, n, workers);
  o.require(std::abs(m.mean_loss - nh) <= 2.0 * m.std_error,
            "MCWF loss = " + num(m.mean_loss) + " ± " + num(m.std_error, 3) + " (" + std::to_string(n) +
                " trajectories per input) vs non-Hermitian " + num(nh) + " [within 2 sigma]");
  return o;
}

Outcome criterion7(int workers) {
  Outcome o;
  const GateDesignU1 d = repro::design_from(fixtures::table3());
  FidelityOptions opt;
  opt.n_samples = 100;
  opt.n_bootstrap = 1000;
  opt.workers = workers;
  std::vector<FidelityEstimate> est;
  const std::array<double, 4> temps = {1.0, 2.0, 5.0, 10.0};
  for (double t : temps) {
    NoiseScenario s = thermal_scenario(units::microkelvin(t), DriftMode::all);
    s.seed = 7;
    est.push_back(noisy_gate_fidelity(s, d, opt));
    o.detail << "    T = " << t << " uK: mean error " << num(est.back().mean) << " CI [" << num(est.back().ci_low)
             << ", " << num(est.back().ci_high) << "], " << est.back().branches << " branches\n";
  }
  o.require(est[0].mean >= 2e-3 && est[0].mean <= 1.5e-2, "1 uK error " + num(est[0].mean) + " in [2e-3, 1.5e-2]");
  for (std::size_t k = 1; k < est.size(); ++k) {
    o.require(est[k].mean > est[k - 1].mean && est[k].ci_low > est[k - 1].ci_high,
              "increase " + num(temps[k - 1]) + " -> " + num(temps[k]) + " uK with disjoint CIs");
  }
  return o;
}

Outcome criterion8(int workers) {
  Outcome o;
  const GateDesignU1 d = repro::design_from(fixtures::table3());
  FidelityOptions opt;
  opt.n_samples = 1000;
  opt.n_bootstrap = 1000;
  opt.workers = workers;
  for (double t : {1.0, 10.0}) {
    NoiseScenario s = thermal_scenario(units::microkelvin(t), DriftMode::all);
    s.phase_noise = PhaseNoiseSpectrum::enhanced();
    s.position_quadrature = true;
    s.steps = 200;
    s.seed = 8;
    const FidelityEstimate e = noisy_gate_fidelity(s, d, opt);
    o.require(e.mean >= 0.10 && e.mean <= 0.35, "T = " + num(t) + " uK: mean error " + num(e.mean) + " CI [" +
                                                    num(e.ci_low) + ", " + num(e.ci_high) + "] in [0.10, 0.35]");
  }
  return o;
}

Outcome criterion9(int workers) {
  Outcome o;

  // Closed-form vs numeric eigenvalues.
  std::mt19937_64 rng(90210);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double w = std::abs(u(rng)), dl = u(rng), v = u(rng);
    const auto r = eig3_shengjin<double>(mhz(w), mhz(dl), mhz(v));
    const Eigen::VectorXd ref = eig_numeric(h_v1(LaserParams{cplx(mhz(w), 0.0), mhz(dl)}, InteractionParams{mhz(v)})).values;
    std::array<double, 3> e = r.eps;
    std::sort(e.begin(), e.end());
    const double scale = ref.cwiseAbs().maxCoeff();
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(e[j] - ref(j)) / scale);
  }
  o.require(worst < 1e-10, "closed-form eigenvalues, 10^4 samples: max relative deviation " + num(worst, 3));

  // Integer sum rule on search output.
  SearchU1Options s;
  s.omega = mhz(10.0);
  s.delta_lo = mhz(-30.0);
  s.delta_hi = mhz(30.0);
  s.v_lo = mhz(-60.0);
  s.v_hi = mhz(60.0);
  s.n_min = 1;
  s.n_max = 6;
  s.grid_step = mhz(0.5);
  s.max_e_ro = 1e-6;
  s.max_e_de = 200e-9;
  s.workers = workers;
  const auto found = search_u1(s);
  const bool sums = std::all_of(found.begin(), found.end(), [](const GateDesignU1& d) { return d.m[0] + d.m[1] + d.m[2] == 0; });
  o.require(!found.empty() && sums, "M1 + M2 + M3 = 0 on all " + std::to_string(found.size()) + " search outputs");

  // Unitarity and norm.
  double unit_dev = 0.0, norm_dev = 0.0, growth = 0.0;
  for (int k = 0; k < 50; ++k) {
    const LaserParams lc{std::polar(mhz(std::abs(u(rng))), u(rng)), mhz(u(rng))};
    const LaserParams lt{std::polar(mhz(std::abs(u(rng))), u(rng)), mhz(u(rng))};
    const InteractionParams v{mhz(u(rng))};
    const double t = units::ns(50.0 + 10.0 * std::abs(u(rng)));
    for (const ComplexMatrix& h : {h_v1(lc, v), h_v2(lc, lt, v), h_two_atom(lc, lt, v)}) {
      const ComplexMatrix p = propagator(h, t);
      unit_dev = std::max(unit_dev, (p.adjoint() * p - ComplexMatrix::Identity(p.rows(), p.cols())).norm());
    }
    const ComplexMatrix h = h_two_atom(lc, lt, v);
    const StateVector psi = propagate_steps([&](double) { return h; }, basis_state(h.rows(), 8), 0.0, t, t / 100);
    norm_dev = std::max(norm_dev, std::abs(psi.norm() - 1.0));
  }
  const GateDesignU1 d3 = repro::design_from(fixtures::table3(), false);
  NoiseScenario ns = thermal_scenario(units::microkelvin(10.0), DriftMode::none);
  ns.steps = 200;
  for (int input = 0; input < basis::comp::dim; ++input) {
    const StateVector start = basis_state(basis::pair_dim, basis::comp_to_pair(input));
    ns.lifetime = std::numeric_limits<double>::infinity();
    Realization r = nominal_realization(ns);
    r.v_c = Vec3(3e4, 0.0, 1e4);
    r.v_t = Vec3(-2e4, 0.0, -1e4);
    norm_dev = std::max(norm_dev, std::abs(GateDynamics(ns, d3, r, false).evolve(start).norm() - 1.0));
    ns.lifetime = 1.2e-3;
    growth = std::max(growth, GateDynamics(ns, d3, r, false).evolve(start).norm() - 1.0);
  }
  o.require(unit_dev < 1e-10, "propagators unitary: max ||U'U - 1|| = " + num(unit_dev, 3));
  o.require(norm_dev < 1e-10, "Hermitian stepping preserves the norm: max deviation " + num(norm_dev, 3));
  o.require(growth <= 1e-12, "decay never increases the norm: max growth " + num(growth, 3));

  // Interaction from C6.
  const auto& nref = fixtures::noise_reference();
  const double v = units::to_mhz(InteractionParams::from_c6(units::thz_um6(nref.c6_thz_um6), fixtures::table3().spacing_um).v);
  o.require(std::abs(v - nref.v_mhz_at_spacing) <= 0.02 * nref.v_mhz_at_spacing,
            "V/2pi from C6/L^6 = " + num(v) + " MHz [expected " + num(nref.v_mhz_at_spacing) + " ± 2%]");

  // Leak ratios with the documented radial defaults.
  const ExcitationScheme scheme;
  const LeakRatios lr = leak_ratios(scheme);
  const auto& lref = nref.leak_ratio;
  o.require(std::abs(lr.d - lref[0] / lref[1]) <= 0.05 * lref[0] / lref[1] &&
                std::abs(lr.s - lref[2] / lref[1]) <= 0.05 * lref[2] / lref[1],
            "Omega_d : Omega_0 : Omega_s = " + num(lr.d, 4) + " : 1 : " + num(lr.s, 4) + " vs 2 : 1 : 0.84 ± 5% (radial ratios " +
                num(scheme.ratio_98d, 5) + ", " + num(scheme.ratio_99s, 5) + ")");

  // Angular coefficients against exact values.
  int bad = 0, checked = 0;
  for (const auto& r : oracle::kCg) {
    const ExactRoot x = clebsch_gordan_exact(r.j1, r.m1, r.j2, r.m2, r.j, r.m);
    bad += (x.sign != r.sign || x.square != Rational(r.p, r.q)) ? 1 : 0;
    const double f = clebsch_gordan(r.j1 / 2.0, r.m1 / 2.0, r.j2 / 2.0, r.m2 / 2.0, r.j / 2.0, r.m / 2.0);
    bad += std::abs(f - r.sign * std::sqrt(static_cast<double>(r.p) / r.q)) > 1e-12 ? 1 : 0;
    ++checked;
  }
  for (const auto& r : oracle::kSixJ) {
    const ExactRoot x = wigner_6j_exact(r.a, r.b, r.c, r.d, r.e, r.f);
    bad += (x.sign != r.sign || x.square != Rational(r.p, r.q)) ? 1 : 0;
    const double f = wigner_6j(r.a / 2.0, r.b / 2.0, r.c / 2.0, r.d / 2.0, r.e / 2.0, r.f / 2.0);
    bad += std::abs(f - r.sign * std::sqrt(static_cast<double>(r.p) / r.q)) > 1e-12 ? 1 : 0;
    ++checked;
  }
  double float_dev = 0.0;
  for (int j1 = 0; j1 <= 4; ++j1) {
    for (int j2 = 0; j2 <= 4; ++j2) {
      for (int j = std::abs(j1 - j2); j <= j1 + j2; j += 2) {
        for (int m1 = -j1; m1 <= j1; m1 += 2) {
          for (int m2 = -j2; m2 <= j2; m2 += 2) {
            if (std::abs(m1 + m2) > j) continue;
            const double e = clebsch_gordan_exact(j1, m1, j2, m2, j, m1 + m2).value();
            const double f = clebsch_gordan(j1 / 2.0, m1 / 2.0, j2 / 2.0, m2 / 2.0, j / 2.0, (m1 + m2) / 2.0);
            float_dev = std::max(float_dev, std::abs(e - f));
          }
        }
      }
    }
  }
  o.require(bad == 0 && float_dev < 1e-12, std::to_string(checked) + " CG/6-j values match exact oracle; exhaustive CG " +
                                               "(j <= 2) float vs exact max deviation " + num(float_dev, 3));
  return o;
}

}  // namespace

int main() {
  const int workers = worker_count();
  std::cout << "acceptance run, " << workers << " worker(s)\n";
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Table 1 reproduction", criterion1},
      {2, "Table 2 reproduction", criterion2},
      {3, "seeded search recovery", [&] { return criterion3(workers); }},
      {4, "CZ synthesis", criterion4},
      {5, "pulse-edge study", criterion5},
      {6, "decay: non-Hermitian and MCWF", [&] { return criterion6(workers); }},
      {7, "thermal trend with 1 uK anchor", [&] { return criterion7(workers); }},
      {8, "phase-noise order of magnitude", [&] { return criterion8(workers); }},
      {9, "property suites", [&] { return criterion9(workers); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " (" << num(secs, 3)
              << " s)\n"
              << o.detail.str() << std::flush;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? std::string("all criteria passed")
                          : std::to_string(failed) + (failed == 1 ? " criterion failed" : " criteria failed"))
            << "\n";
  return failed == 0 ? 0 : 1;
}
