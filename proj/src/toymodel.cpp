#include "trapent/toymodel.hpp"

#include <cmath>
#include <numbers>

#include "trapent/errors.hpp"

namespace trapent::toy {

void validate(const ToyParams& p) {
  if (!(p.omega - p.delta > 0.0)) throw DomainError("toy model needs omega - delta > 0");
  if (!(p.g >= 0.0) || !std::isfinite(p.g)) throw DomainError("toy model needs finite g >= 0");
}

ToyGroundState toy_ground_state(const ToyParams& p) {
  validate(p);
  // Shift by delta and scale by the gap: [[0, sqrt2 r], [sqrt2 r, 1]] with
  // lowest eigenvalue e = (1 - sqrt(1 + 8 r^2))/2 and eigenvector (1 - e, -sqrt2 r).
  const double r = p.g / (p.omega - p.delta);
  const double one_minus_e = 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * r * r));
  const double v1 = -std::numbers::sqrt2 * r;
  const double n = std::hypot(one_minus_e, v1);
  return {one_minus_e / n, v1 / n};
}

double toy_entropy(double a00, double a_sym) {
  if (std::abs(a00 * a00 + a_sym * a_sym - 1.0) > 1e-10) {
    throw NormalizationError("toy_entropy: amplitudes are not normalized");
  }
  // M = [[a00, s], [s, 0]] with s = a_sym/sqrt2 is symmetric; its eigenvalues
  // are the Schmidt coefficients up to sign.
  const double s = a_sym / std::numbers::sqrt2;
  const double root = std::sqrt(a00 * a00 + 4.0 * s * s);
  const double mu1 = 0.5 * (a00 + root);
  const double mu2 = mu1 > 0.0 ? -s * s / mu1 : a00;  // det M = -s^2
  double e = 0.0;
  for (double mu : {mu1, mu2}) {
    const double w = mu * mu;
    if (w >= 1e-16) e -= w * std::log(w);
  }
  return e;
}

double toy_entropy_at(double g_over_gap) {
  const ToyGroundState gs = toy_ground_state({1.0, 0.0, g_over_gap});
  return toy_entropy(gs.a00, gs.a_sym);
}

double toy_saturation_entropy() {
  return 2.0 * std::numbers::ln2 - 0.5 * std::sqrt(3.0) * std::log(2.0 + std::sqrt(3.0));
}

}  // namespace trapent::toy
