#pragma once

#include <span>
#include <vector>

namespace trapent::toy {

// Two distinguishable atoms, motional states {|0>, |1>}, no double excitation:
//   H = omega (|10><10| + |01><01|) + delta |00><00| + g (|10><00| + |01><00| + h.c.)
struct ToyParams {
  double omega = 1.0;  // trap spacing
  double delta = 0.0;  // ground-manifold shift, delta < omega
  double g = 0.0;      // single-excitation coupling, g >= 0
};

// Ground state a00 |00> + a_sym (|10> + |01>)/sqrt(2), with a00 >= 0.
struct ToyGroundState {
  double a00;
  double a_sym;
};

// Throws DomainError unless omega - delta > 0 and g >= 0.
void validate(const ToyParams& p);

// Lowest eigenvector of [[delta, sqrt2 g], [sqrt2 g, omega]]. The antisymmetric
// combination of |10>, |01> is decoupled by the interaction and never enters.
ToyGroundState toy_ground_state(const ToyParams& p);

// Single-atom von Neumann entropy of the state above.
// Throws NormalizationError unless a00^2 + a_sym^2 = 1 within 1e-10.
double toy_entropy(double a00, double a_sym);

// Entropy as a function of g/(omega - delta) alone.
double toy_entropy_at(double g_over_gap);

// Strong-coupling limit 2 ln 2 - (sqrt3/2) ln(2 + sqrt3).
double toy_saturation_entropy();

}  // namespace trapent::toy
