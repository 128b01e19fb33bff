#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace rydgate {

using Rational = boost::multiprecision::cpp_rational;

// sign · sqrt(square), with square an exact non-negative rational.
struct ExactRoot {
  int sign = 0;
  Rational square = 0;

  double value() const;
};

// Arguments are doubled angular momenta (2j, 2m) so half-integers stay exact.
// Out-of-rule inputs give an exact zero.
ExactRoot clebsch_gordan_exact(int j1, int m1, int j2, int m2, int j, int m);
ExactRoot wigner_6j_exact(int j1, int j2, int j3, int j4, int j5, int j6);

// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention.
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);
// {j1 j2 j3; j4 j5 j6}
double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6);

}  // namespace rydgate
