#include "rydgate/repro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rydgate/units.hpp"

namespace rydgate::repro {

namespace {

using units::mhz;

std::string num(double x, int precision = 7) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

Check within_abs(const std::string& name, double value, double expected, double tol) {
  return {name, num(value), num(expected) + " ± " + num(tol, 3), std::abs(value - expected) <= tol};
}

Check within_rel(const std::string& name, double value, double expected, double rel) {
  return {name, num(value, 5), num(expected, 5) + " ± " + num(100 * rel, 3) + "%",
          std::abs(value - expected) <= rel * std::abs(expected)};
}

Check within_factor(const std::string& name, double value, double expected, double factor) {
  return {name, num(value, 4), num(expected, 4) + " (×" + num(factor, 2) + ")",
          value >= expected / factor && value <= expected * factor};
}

}  // namespace

bool RowReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

GateDesignU1 design_from(const fixtures::Table1Row& row, bool with_decay) {
  const LaserParams l{cplx(mhz(row.omega_mhz), 0.0), mhz(row.delta_mhz)};
  InteractionParams v;
  v.v = mhz(row.v_mhz);
  return with_decay ? make_design_u1(l, v, row.n) : make_design_u1_fast(l, v, row.n);
}

GateDesignU2 design_from(const fixtures::Table2Row& row, bool with_decay) {
  const LaserParams lc{cplx(mhz(row.omega_c_mhz), 0.0), mhz(row.delta_c_mhz)};
  const LaserParams lt{cplx(mhz(row.omega_t_mhz), 0.0), mhz(row.delta_t_mhz)};
  InteractionParams v;
  v.v = mhz(row.v_mhz);
  return with_decay ? make_design_u2(lc, lt, v, row.n_c, row.n_t) : make_design_u2_fast(lc, lt, v, row.n_c, row.n_t);
}

GateDesignU1 design_from(const fixtures::Table3Row& row, bool with_decay) {
  const LaserParams l{cplx(mhz(row.omega_mhz), 0.0), mhz(row.delta_mhz)};
  InteractionParams v;
  v.v = mhz(row.v_mhz);
  return with_decay ? make_design_u1(l, v, row.n) : make_design_u1_fast(l, v, row.n);
}

std::vector<RowReport> check_table1(bool residuals) {
  std::vector<RowReport> out;
  for (const auto& row : fixtures::table1()) {
    const GateDesignU1 d = design_from(row);
    RowReport r;
    r.label = "Table 1 case " + std::to_string(row.case_id);
    const auto fmt_m = [](const std::array<int, 3>& m) {
      return "(" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]) + ")";
    };
    r.checks.push_back({"M", fmt_m(d.m), fmt_m(row.m), d.m == row.m});
    if (residuals) {
      const auto res = resonance_residuals(d);
      double worst = 0.0;
      for (double x : res) worst = std::max(worst, std::abs(x));
      r.checks.push_back({"max residual (cycles)", num(worst, 3), "< 1e-06", worst < 1e-6});
    }
    r.checks.push_back(within_abs("t_g (ns)", units::to_ns(d.gate_time), row.tg_ns, 1.0));
    const double angle = wrap_positive(d.beta_gate - 2.0 * d.alpha) / units::pi;
    r.checks.push_back(within_abs("(beta-2alpha)/pi", angle, row.beta_minus_2alpha_over_pi, 1e-4));
    r.checks.push_back(within_factor("E_ro", d.e_ro, row.e_ro, 3.0));
    r.checks.push_back(within_rel("E_de (ns/tau)", units::to_ns(d.e_de_per_tau), row.e_de_ns, 0.02));
    out.push_back(r);
  }
  return out;
}

std::vector<RowReport> check_table2() {
  std::vector<RowReport> out;
  int index = 0;
  for (const auto& row : fixtures::table2()) {
    const GateDesignU2 d = design_from(row);
    RowReport r;
    r.label = "Table 2 row " + std::to_string(++index) + " (case " + std::to_string(row.case_id) + ")";
    const double offset = reduce_angle(d.beta - d.alpha - d.gamma - row.angle_over_pi * units::pi);
    r.checks.push_back(
        {"(beta-alpha-gamma)/pi mod 2", num(wrap_positive(d.beta - d.alpha - d.gamma) / units::pi),
         num(wrap_positive(row.angle_over_pi * units::pi) / units::pi) + " ± 0.001", std::abs(offset) <= 1e-3 * units::pi});
    r.checks.push_back(within_factor("E_ro", d.e_ro, row.e_ro, 3.0));
    r.checks.push_back(within_rel("E_de (ns/tau)", units::to_ns(d.e_de_per_tau), row.e_de_ns, 0.05));
    r.checks.push_back(within_abs("t_c (ns)", units::to_ns(d.t_c), row.tc_ns, 1.0));
    r.checks.push_back(within_abs("t_t (ns)", units::to_ns(d.t_t), row.tt_ns, 1.0));
    out.push_back(r);
  }
  return out;
}

std::vector<RowReport> check_table3() {
  const auto& row = fixtures::table3();
  const auto& noise = fixtures::noise_reference();
  const GateDesignU1 d = design_from(row, false);
  RowReport r;
  r.label = "Table 3";
  r.checks.push_back(within_abs("t_g (ns)", units::to_ns(d.gate_time), 1e3 * row.tg_us, 1.0));
  r.checks.push_back(within_abs("(beta-2alpha)/pi", reduce_angle(d.beta_gate - 2.0 * d.alpha) / units::pi,
                                row.beta_minus_2alpha_over_pi, 1e-4));
  const InteractionParams v = InteractionParams::from_c6(units::thz_um6(noise.c6_thz_um6), row.spacing_um);
  r.checks.push_back(within_rel("V from C6/L^6 (MHz)", units::to_mhz(v.v), noise.v_mhz_at_spacing, 0.02));
  return {r};
}

bool all_pass(const std::vector<RowReport>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const RowReport& r) { return r.pass(); });
}

std::string format_report(const std::vector<RowReport>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.label << (r.pass() ? "  PASS" : "  FAIL") << "\n";
    for (const auto& c : r.checks) {
      os << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.computed << "  [expected " << c.expected
         << "]\n";
    }
  }
  return os.str();
}

}  // namespace rydgate::repro
