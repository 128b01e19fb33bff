#include "rydgate/atomic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rydgate {

namespace {

constexpr int kTwoI = 3;     // ⁸⁷Rb nuclear spin 3/2
constexpr int kTwoJ5S = 1;   // 5S₁/₂
constexpr int kTwoJ5P = 3;   // 5P₃/₂
constexpr int kLP = 1;

int parity_sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

ExactRoot times(const ExactRoot& a, const ExactRoot& b) {
  ExactRoot out;
  out.sign = a.sign * b.sign;
  out.square = a.square * b.square;
  if (out.sign == 0) out.square = 0;
  return out;
}

ExactRoot scaled(const ExactRoot& a, int sign, const Rational& square) {
  ExactRoot out = a;
  out.sign *= sign;
  out.square *= square;
  if (out.sign == 0) out.square = 0;
  return out;
}

// Ground level and target Rydberg components of one transition.
struct Target {
  int two_f;
  int two_m;
  int l;
  double radial;
  std::vector<std::pair<int, int>> levels;  // (2J, 2m_J) with m_I = M − m_J
  std::string name;
};

// Detuning of the lower beam from 5P₃/₂ F' for a ground state lying `offset` below |1>.
double intermediate_detuning(const ExcitationScheme& s, int two_fp, double offset) {
  double level = 0.0;  // F'=3 reference
  if (two_fp <= 4) level -= s.delta_hyp;
  if (two_fp <= 2) level -= s.delta_hyp_21;
  return s.delta_2pho - offset - level;
}

std::vector<ZeemanComponent> components(const ExcitationScheme& s, const Target& t, double offset) {
  if (s.delta_2pho == 0.0) {
    throw std::invalid_argument("ExcitationScheme: delta_2pho must be nonzero");
  }
  std::vector<ZeemanComponent> out;
  double total = 0.0;
  for (const auto& [two_j, two_mj] : t.levels) {
    ZeemanComponent c;
    c.l = t.l;
    c.two_j = two_j;
    c.two_mj = two_mj;
    c.two_mi = t.two_m - two_mj;
    std::ostringstream os;
    os << t.name << (t.l == 0 ? "s" : "d") << two_j << "/2 mJ=" << two_mj << "/2 mI=" << c.two_mi << "/2";
    c.label = os.str();
    double acc = 0.0;
    for (int two_fp = 2; two_fp <= 6; two_fp += 2) {
      if (std::abs(t.two_m) > two_fp) continue;
      const double lower = s.field_low * s.lower_reduced *
                           hyperfine_dipole_factor(kTwoJ5S, t.two_f, t.two_m, kTwoJ5P, two_fp, t.two_m, kTwoI);
      // |F' M> projected on |m_J, m_I>, then π coupling m_J → m_J.
      const double upper = s.field_upp * s.upper_reduced * t.radial *
                           clebsch_gordan(1.5, 0.5 * two_mj, 1.5, 0.5 * c.two_mi, 0.5 * two_fp, 0.5 * t.two_m) *
                           clebsch_gordan(1.5, 0.5 * two_mj, 1.0, 0.0, 0.5 * two_j, 0.5 * two_mj) *
                           fine_reduced_factor(kLP, kTwoJ5P, t.l, two_j);
      const double term = lower * upper / (2.0 * intermediate_detuning(s, two_fp, offset));
      acc += term * term;
    }
    c.rabi = std::sqrt(acc);
    total += acc;
    out.push_back(c);
  }
  const double norm = std::sqrt(total);
  for (auto& c : out) c.zeta = norm > 0.0 ? c.rabi / norm : 0.0;
  return out;
}

double total_rabi(const std::vector<ZeemanComponent>& cs) {
  std::vector<double> zeta, rabi;
  for (const auto& c : cs) {
    zeta.push_back(c.zeta);
    rabi.push_back(c.rabi);
  }
  double sq = 0.0;
  for (double z : zeta) sq += z * z;
  return sq == 0.0 ? 0.0 : superposition_rabi(zeta, rabi);
}

}  // namespace

double hyperfine_dipole_factor(int two_j, int two_f, int two_m, int two_jp, int two_fp, int two_mp, int two_i) {
  return hyperfine_dipole_factor_exact(two_j, two_f, two_m, two_jp, two_fp, two_mp, two_i).value();
}

double fine_reduced_factor(int l, int two_j, int lp, int two_jp) {
  return fine_reduced_factor_exact(l, two_j, lp, two_jp).value();
}

ExactRoot hyperfine_dipole_factor_exact(int two_j, int two_f, int two_m, int two_jp, int two_fp, int two_mp,
                                        int two_i) {
  const int two_q = two_mp - two_m;
  const ExactRoot cg = clebsch_gordan_exact(two_f, two_m, 2, two_q, two_fp, two_mp);
  const ExactRoot sixj = wigner_6j_exact(two_jp, two_fp, two_i, two_f, two_j, 2);
  const int sign = parity_sign((two_jp + two_i + two_f + 2) / 2);
  return scaled(times(cg, sixj), sign, Rational((two_f + 1) * (two_jp + 1)));
}

ExactRoot fine_reduced_factor_exact(int l, int two_j, int lp, int two_jp) {
  constexpr int two_s = 1;
  const ExactRoot sixj = wigner_6j_exact(2 * lp, two_jp, two_s, two_j, 2 * l, 2);
  const int sign = parity_sign((2 * lp + two_s + two_j + 2) / 2);
  return scaled(sixj, sign, Rational((two_j + 1) * (2 * lp + 1)));
}

double superposition_rabi(const std::vector<double>& zeta, const std::vector<double>& component_rabi) {
  if (zeta.size() != component_rabi.size()) {
    throw std::invalid_argument("superposition_rabi: zeta and rabi lists differ in length");
  }
  double norm = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < zeta.size(); ++k) {
    norm += zeta[k] * zeta[k];
    sum += zeta[k] * component_rabi[k];
  }
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("superposition_rabi: sum of zeta^2 must be 1");
  }
  return std::abs(sum);
}

double two_photon_rabi(const ExcitationScheme& s) {
  const Target t{4, 4, 0, 1.0, {{1, 1}}, "100"};
  return components(s, t, 0.0).front().rabi;
}

std::vector<ZeemanComponent> leak_components(const ExcitationScheme& s, LeakChannel channel) {
  if (channel == LeakChannel::d) {
    const Target t{4, 4, 2, s.ratio_98d, {{3, 1}, {3, 3}, {5, 1}, {5, 3}, {5, 5}}, "98"};
    return components(s, t, 0.0);
  }
  const Target t{2, 2, 0, s.ratio_99s, {{1, -1}, {1, 1}}, "99"};
  return components(s, t, s.ground_hfs);
}

double leak_rabi(const ExcitationScheme& s, LeakChannel channel) { return total_rabi(leak_components(s, channel)); }

LeakRatios leak_ratios(const ExcitationScheme& s) {
  const double omega0 = two_photon_rabi(s);
  if (!(omega0 > 0.0)) {
    throw std::invalid_argument("leak_ratios: vanishing two-photon Rabi frequency");
  }
  return {leak_rabi(s, LeakChannel::d) / omega0, leak_rabi(s, LeakChannel::s) / omega0};
}

}  // namespace rydgate
