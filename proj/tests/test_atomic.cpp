#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>

#include "rydgate/atomic.hpp"
#include "rydgate/fixtures.hpp"

using namespace rydgate;

namespace {

// Brute-force oracle in the uncoupled |m_L, m_S, m_I> basis (doubled projections).
using Key = std::tuple<int, int, int>;
using Uncoupled = std::map<Key, double>;

double cg2(int j1, int m1, int j2, int m2, int j, int m) {
  return clebsch_gordan(0.5 * j1, 0.5 * m1, 0.5 * j2, 0.5 * m2, 0.5 * j, 0.5 * m);
}

// |((L S) J, I) F M> with S = 1/2; two_f < 0 leaves I uncoupled with projection two_mi.
Uncoupled coupled_state(int l, int two_j, int two_i, int two_f, int two_m, int two_mi = 0) {
  Uncoupled out;
  for (int two_ml = -2 * l; two_ml <= 2 * l; two_ml += 2) {
    for (int two_ms = -1; two_ms <= 1; two_ms += 2) {
      const int two_mj = two_ml + two_ms;
      if (std::abs(two_mj) > two_j) continue;
      const double ls = cg2(2 * l, two_ml, 1, two_ms, two_j, two_mj);
      if (two_f < 0) {
        if (two_mj == two_m) out[{two_ml, two_ms, two_mi}] += ls;
        continue;
      }
      const int mi = two_m - two_mj;
      if (std::abs(mi) > two_i) continue;
      out[{two_ml, two_ms, mi}] += ls * cg2(two_j, two_mj, two_i, mi, two_f, two_m);
    }
  }
  return out;
}

// <b| d_q |a> with <L' m'|d_q|L m> = <L m; 1 q|L' m'> (unit orbital reduced element).
double dipole(const Uncoupled& b, int lb, const Uncoupled& a, int la, int two_q) {
  double sum = 0.0;
  for (const auto& [ka, va] : a) {
    const auto [ml, ms, mi] = ka;
    const auto it = b.find({ml + two_q, ms, mi});
    if (it == b.end()) continue;
    sum += it->second * va * cg2(2 * la, ml, 2, two_q, 2 * lb, ml + two_q);
  }
  return sum;
}

// Independent rebuild of one leak or target component.
double brute_component(const ExcitationScheme& s, int ground_two_f, int ground_two_m, double offset, int l,
                       int two_j, int two_mj, double radial) {
  const Uncoupled ground = coupled_state(0, 1, 3, ground_two_f, ground_two_m);
  const Uncoupled ryd = coupled_state(l, two_j, 3, -1, two_mj, ground_two_m - two_mj);
  // The lower reduced element is J-level: remove the fine factor of the brute-force orbital model.
  const double lower_norm = 1.0 / fine_reduced_factor(0, 1, 1, 3);
  double acc = 0.0;
  for (int two_fp = 0; two_fp <= 6; two_fp += 2) {
    if (std::abs(ground_two_m) > two_fp) continue;
    const Uncoupled mid = coupled_state(1, 3, 3, two_fp, ground_two_m);
    const double lower = s.field_low * s.lower_reduced * lower_norm * dipole(mid, 1, ground, 0, 0);
    const double upper = s.field_upp * s.upper_reduced * radial * dipole(ryd, l, mid, 1, 0);
    double level = 0.0;
    if (two_fp <= 4) level -= s.delta_hyp;
    if (two_fp <= 2) level -= s.delta_hyp_21;
    if (two_fp == 0) level -= units::mhz(72.218);
    const double term = lower * upper / (2.0 * (s.delta_2pho - offset - level));
    acc += term * term;
  }
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("fine-structure reduction against the uncoupled basis") {
  for (const auto& [l, lp] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{1, 2}, std::pair{2, 1}}) {
    for (int two_j = std::abs(2 * l - 1); two_j <= 2 * l + 1; two_j += 2) {
      for (int two_jp = std::abs(2 * lp - 1); two_jp <= 2 * lp + 1; two_jp += 2) {
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
          for (int two_q = -2; two_q <= 2; two_q += 2) {
            const int two_mp = two_m + two_q;
            if (std::abs(two_mp) > two_jp) continue;
            const double brute = dipole(coupled_state(lp, two_jp, 0, -1, two_mp), lp,
                                        coupled_state(l, two_j, 0, -1, two_m), l, two_q);
            const double formula = cg2(two_j, two_m, 2, two_q, two_jp, two_mp) * fine_reduced_factor(l, two_j, lp, two_jp);
            CHECK(formula == doctest::Approx(brute).epsilon(1e-12).scale(1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("hyperfine dipole factors against the uncoupled basis") {
  for (int two_jp : {1, 3}) {
    for (int two_f = 2; two_f <= 4; two_f += 2) {
      for (int two_fp = std::abs(two_jp - 3); two_fp <= two_jp + 3; two_fp += 2) {
        for (int two_m = -two_f; two_m <= two_f; two_m += 2) {
          for (int two_q = -2; two_q <= 2; two_q += 2) {
            const int two_mp = two_m + two_q;
            if (std::abs(two_mp) > two_fp) continue;
            const double brute = dipole(coupled_state(1, two_jp, 3, two_fp, two_mp), 1,
                                        coupled_state(0, 1, 3, two_f, two_m), 0, two_q);
            const double formula = hyperfine_dipole_factor(1, two_f, two_m, two_jp, two_fp, two_mp, 3) *
                                   fine_reduced_factor(0, 1, 1, two_jp);
            CHECK(formula == doctest::Approx(brute).epsilon(1e-12).scale(1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("printed lower and upper angular factors") {
  // Printed form C·√(2(2F'+1))·{6j} uses a reduced element carrying √(2F'+1);
  // here <F'M'|d|FM> = C·<F'||d||F>, so the two differ by √(2(2F+1)/(2F'+1)).
  const double low2 = clebsch_gordan(2, 2, 1, 0, 2, 2) * std::sqrt(10.0) * wigner_6j(0.5, 1.5, 1, 2, 2, 1.5);
  const double low3 = clebsch_gordan(2, 2, 1, 0, 3, 2) * std::sqrt(14.0) * wigner_6j(0.5, 1.5, 1, 3, 2, 1.5);
  CHECK(std::abs(hyperfine_dipole_factor(1, 4, 4, 3, 4, 4, 3)) ==
        doctest::Approx(std::abs(low2) * std::sqrt(10.0 / 5.0)).epsilon(1e-12));
  CHECK(std::abs(hyperfine_dipole_factor(1, 4, 4, 3, 6, 4, 3)) ==
        doctest::Approx(std::abs(low3) * std::sqrt(10.0 / 7.0)).epsilon(1e-12));
  // Equal path weights: the stretched |F=2, m_F=2> splits evenly over F' = 2, 3.
  CHECK(std::abs(hyperfine_dipole_factor(1, 4, 4, 3, 4, 4, 3)) ==
        doctest::Approx(std::abs(hyperfine_dipole_factor(1, 4, 4, 3, 6, 4, 3))).epsilon(1e-12));

  const double upp = clebsch_gordan(0.5, 0.5, 1, 0, 1.5, 0.5) * std::sqrt(6.0) * wigner_6j(1, 0, 1, 0.5, 1.5, 0.5);
  CHECK(clebsch_gordan(0.5, 0.5, 1, 0, 1.5, 0.5) * fine_reduced_factor(0, 1, 1, 3) == doctest::Approx(-upp).epsilon(1e-12));
}

TEST_CASE("exact and floating angular factors agree") {
  for (int two_f = 2; two_f <= 4; two_f += 2) {
    for (int two_fp = 0; two_fp <= 6; two_fp += 2) {
      for (int two_m = -two_f; two_m <= two_f; two_m += 2) {
        const double exact = hyperfine_dipole_factor_exact(1, two_f, two_m, 3, two_fp, two_m, 3).value();
        CHECK(std::abs(exact - hyperfine_dipole_factor(1, two_f, two_m, 3, two_fp, two_m, 3)) < 1e-12);
      }
    }
  }
  const ExactRoot f = fine_reduced_factor_exact(1, 3, 2, 5);
  CHECK(std::abs(f.value() - fine_reduced_factor(1, 3, 2, 5)) < 1e-12);
  CHECK(f.square > 0);
}

TEST_CASE("leak components match the brute-force pathway sum") {
  const ExcitationScheme s;
  const double omega0 = two_photon_rabi(s);
  CHECK(omega0 == doctest::Approx(brute_component(s, 4, 4, 0.0, 0, 1, 1, 1.0)).epsilon(1e-12));
  for (const auto& c : leak_components(s, LeakChannel::d)) {
    CHECK(c.rabi == doctest::Approx(brute_component(s, 4, 4, 0.0, 2, c.two_j, c.two_mj, s.ratio_98d)).epsilon(1e-12).scale(1e-30));
  }
  for (const auto& c : leak_components(s, LeakChannel::s)) {
    CHECK(c.rabi == doctest::Approx(brute_component(s, 2, 2, s.ground_hfs, 0, c.two_j, c.two_mj, s.ratio_99s)).epsilon(1e-12).scale(1e-30));
  }
}

TEST_CASE("default radial ratios give 2 : 1 : 0.84") {
  const ExcitationScheme s;
  const LeakRatios r = leak_ratios(s);
  const auto& ref = fixtures::noise_reference().leak_ratio;
  CHECK(r.d == doctest::Approx(ref[0] / ref[1]).epsilon(0.05));
  CHECK(r.s == doctest::Approx(ref[2] / ref[1]).epsilon(0.05));

  double z2 = 0.0;
  for (const auto& c : leak_components(s, LeakChannel::d)) z2 += c.zeta * c.zeta;
  CHECK(z2 == doctest::Approx(1.0).epsilon(1e-12));
  // π light cannot reach m_J = 5/2 from a 5P₃/₂ level.
  CHECK(leak_components(s, LeakChannel::d).back().rabi == 0.0);
}

TEST_CASE("two-photon Rabi scaling and limits") {
  ExcitationScheme s;
  const double base = two_photon_rabi(s);
  s.field_low *= 2.0;
  s.field_upp *= 2.0;
  CHECK(two_photon_rabi(s) == doctest::Approx(4.0 * base).epsilon(1e-12));

  ExcitationScheme r;
  r.upper_reduced = 3.0;
  r.field_upp = 1.0 / 3.0;
  CHECK(two_photon_rabi(r) == doctest::Approx(base).epsilon(1e-12));

  ExcitationScheme far;
  far.delta_2pho = units::ghz(2e6);
  CHECK(two_photon_rabi(far) < 1e-5 * base);

  ExcitationScheme zero;
  zero.delta_2pho = 0.0;
  CHECK_THROWS_AS(two_photon_rabi(zero), std::invalid_argument);
}

TEST_CASE("zero radial ratio switches a leak channel off") {
  ExcitationScheme s;
  s.ratio_98d = 0.0;
  s.ratio_99s = 0.0;
  CHECK(leak_rabi(s, LeakChannel::d) == 0.0);
  CHECK(leak_rabi(s, LeakChannel::s) == 0.0);
}

TEST_CASE("superposition_rabi normalisation") {
  CHECK(superposition_rabi({0.6, 0.8}, {3.0, 4.0}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(superposition_rabi({0.6, 0.6}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(superposition_rabi({1.0}, {1.0, 2.0}), std::invalid_argument);
}
