#include "rydgate/angular.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>

namespace rydgate {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Doubled value to ordinary integer; the caller guarantees evenness.
int half(int twice) { return twice / 2; }

bool triangle(int a, int b, int c) {
  return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && c <= a + b && c >= std::abs(a - b);
}

bool projection(int j, int m) { return std::abs(m) <= j && (j + m) % 2 == 0; }

std::optional<int> doubled(double x) {
  const double t = 2.0 * x;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9) return std::nullopt;
  return static_cast<int>(r);
}

// Δ(abc)² = (a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)!
Rational triangle_coefficient(int a, int b, int c) {
  return Rational(factorial(half(a + b - c)) * factorial(half(a - b + c)) * factorial(half(-a + b + c)),
                  factorial(half(a + b + c) + 1));
}

ExactRoot from_sum(const Rational& sum, const Rational& prefactor) {
  ExactRoot out;
  if (sum == 0 || prefactor == 0) return out;
  out.sign = sum > 0 ? 1 : -1;
  out.square = sum * sum * prefactor;
  return out;
}

}  // namespace

double ExactRoot::value() const {
  if (sign == 0) return 0.0;
  return sign * std::sqrt(square.convert_to<double>());
}

ExactRoot clebsch_gordan_exact(int j1, int m1, int j2, int m2, int j, int m) {
  if (m != m1 + m2 || !triangle(j1, j2, j) || !projection(j1, m1) || !projection(j2, m2) ||
      !projection(j, m)) {
    return {};
  }
  const Rational prefactor =
      Rational(cpp_int(j + 1) * factorial(half(j + j1 - j2)) * factorial(half(j - j1 + j2)) *
                   factorial(half(j1 + j2 - j)),
               factorial(half(j1 + j2 + j) + 1)) *
      Rational(factorial(half(j + m)) * factorial(half(j - m)) * factorial(half(j1 - m1)) *
               factorial(half(j1 + m1)) * factorial(half(j2 - m2)) * factorial(half(j2 + m2)));

  const int kmax = std::min({half(j1 + j2 - j), half(j1 - m1), half(j2 + m2)});
  const int kmin = std::max({0, -half(j - j2 + m1), -half(j - j1 - m2)});
  Rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const cpp_int denom = factorial(k) * factorial(half(j1 + j2 - j) - k) * factorial(half(j1 - m1) - k) *
                          factorial(half(j2 + m2) - k) * factorial(half(j - j2 + m1) + k) *
                          factorial(half(j - j1 - m2) + k);
    sum += Rational(k % 2 == 0 ? 1 : -1, 1) / Rational(denom);
  }
  return from_sum(sum, prefactor);
}

ExactRoot wigner_6j_exact(int a, int b, int c, int d, int e, int f) {
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) {
    return {};
  }
  const Rational prefactor = triangle_coefficient(a, b, c) * triangle_coefficient(a, e, f) *
                             triangle_coefficient(d, b, f) * triangle_coefficient(d, e, c);
  const int s1 = half(a + b + c), s2 = half(a + e + f), s3 = half(d + b + f), s4 = half(d + e + c);
  const int p1 = half(a + b + d + e), p2 = half(a + c + d + f), p3 = half(b + c + e + f);
  const int tmin = std::max({s1, s2, s3, s4});
  const int tmax = std::min({p1, p2, p3});
  Rational sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    const cpp_int denom = factorial(t - s1) * factorial(t - s2) * factorial(t - s3) * factorial(t - s4) *
                          factorial(p1 - t) * factorial(p2 - t) * factorial(p3 - t);
    const Rational term(factorial(t + 1), denom);
    sum += t % 2 == 0 ? term : Rational(-term);
  }
  return from_sum(sum, prefactor);
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M) {
  const auto a = doubled(j1), b = doubled(m1), c = doubled(j2), d = doubled(m2), e = doubled(J),
             f = doubled(M);
  if (!a || !b || !c || !d || !e || !f) return 0.0;
  return clebsch_gordan_exact(*a, *b, *c, *d, *e, *f).value();
}

double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6) {
  const auto a = doubled(j1), b = doubled(j2), c = doubled(j3), d = doubled(j4), e = doubled(j5),
             f = doubled(j6);
  if (!a || !b || !c || !d || !e || !f) return 0.0;
  return wigner_6j_exact(*a, *b, *c, *d, *e, *f).value();
}

}  // namespace rydgate
