#pragma once

#include <cstddef>
#include <vector>

namespace trapent {

inline constexpr double kPoleExclusionRadius = 1e-6;
inline constexpr double kPoleMergeTolerance = 1e-9;

// Arguments of the regularized trap function F(u, eta).
struct FArgs {
  double u = 0.0;
  double eta = 1.0;  // eta > 0
};

struct FOptions {
  // eval_F refuses |u + p + q*eta| below this radius.
  double exclusion_radius = kPoleExclusionRadius;
  // Relative stopping criterion for the exponential series.
  double series_rel_tol = 1e-14;
  // Hard cap on the total number of series terms.
  std::size_t series_term_cap = 50'000'000;
  // Relative tolerance handed to the adaptive quadrature on (0, 1].
  double quad_rel_tol = 1e-13;
};

// Sorted, merged noninteracting relative energies x = p + q*lambda.
struct PoleLattice {
  std::vector<double> values;
  std::vector<int> multiplicity;

  std::size_t size() const noexcept { return values.size(); }
};

// Gamma function on the real line. Throws DomainError at 0, -1, -2, ...
double gamma_fn(double z);

// 1/Gamma(z); continuous everywhere, zero at the non-positive integers.
double reciprocal_gamma(double z);

// F(u, eta) = int_0^inf dt [eta e^{-ut} / (sqrt(1 - e^{-t}) (1 - e^{-eta t})) - t^{-3/2}],
// analytically continued to u below the first pole.
//
// The integral is split at t = 1. On (0, 1] the subtracted integrand is
// integrated numerically in s = sqrt(t); on [1, inf) both denominators are
// expanded in exponentials and the integral is done term by term, which also
// supplies the continuation to negative u. The -t^{-3/2} tail contributes -2.
//
// Throws NearPoleError when u lies within opt.exclusion_radius of a pole
// -(p + q*eta), DomainError for eta <= 0, SeriesCapError if the series does not
// converge within the term cap.
double eval_F(FArgs args, const FOptions& opt = {});

// Spherical closed form F(-x, 1) = -2 sqrt(pi) Gamma(-x) / Gamma(-x - 1/2).
// Returns 0 at half-integer x where 1/Gamma(-x - 1/2) vanishes; throws
// DomainError at x = 0, 1, 2, ... (poles of Gamma(-x)).
double F_spherical_closed_form(double x);

// All x = p + q*lambda <= x_max (p, q >= 0), sorted, with values closer than
// kPoleMergeTolerance merged and their multiplicities summed.
PoleLattice enumerate_poles(double lambda, double x_max);

}  // namespace trapent
