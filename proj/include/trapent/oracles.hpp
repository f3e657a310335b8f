#pragma once

#include <array>
#include <vector>

#include "trapent/pairstate.hpp"
#include "trapent/toymodel.hpp"

// Reference computations that share no code path with the library routines
// they are used to check.
namespace trapent::oracle {

// Gamma via upward recurrence to z >= 30 plus the Stirling series, evaluated
// in long double; reflection below 1/2.
double gamma_stirling(double z);

// -2 sqrt(pi) Gamma(-x)/Gamma(-x-1/2) built on gamma_stirling; zero where the
// denominator has a pole.
double F_spherical(double x);

// Root of sqrt(2) d/a_s = -F(-x, 1)/sqrt(pi) (lambda = 1, r0 = 0) inside (lo, hi)
// by plain bisection on the closed form.
double spherical_root(double inv_as, double lo, double hi);

// h_n(x) for n = 0..nmax, where phi_n(x) = h_n(x) exp(-x^2/2) is the
// normalized oscillator eigenfunction; three-term Hermite recurrence.
std::vector<double> hermite_polynomials(double x, int nmax);

struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // for weight exp(-x^2)
};

// Golub-Welsch rule from the Jacobi matrix of the Hermite recurrence.
GaussHermiteRule gauss_hermite(int n);

// <a|_1 <b|_2 (|0>_cm |k>_rel) by double Gauss-Hermite quadrature with
// R = (x1 + x2)/sqrt2 and r = (x1 - x2)/sqrt2.
double beamsplitter_overlap(int a, int b, int k);

// Squared singular values of the unblocked (dimension x dimension) amplitude,
// sorted descending.
std::vector<double> dense_schmidt_weights(const AmplitudeMatrix& amp);

// Ground state over {|00>, |10>, |01>} by direct 3x3 diagonalization.
std::array<double, 3> toy_ground_state_3x3(const toy::ToyParams& p);

// Entropy of atom 1 after tracing atom 2 out of the two-qubit state
// c00 |00> + c10 |10> + c01 |01>.
double toy_entropy_bruteforce(const std::array<double, 3>& c);

}  // namespace trapent::oracle
