#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trapent/specfun.hpp"

namespace trapent {

// Dimensionless trap and interaction parameters.
//   lambda   = omega_z / omega_perp
//   inv_as   = -d_perp / a_s (the sweep variable; d_perp / a_s = -inv_as)
//   r0_ratio = |r0| / d_perp
struct TrapParams {
  double lambda = 1.0;
  double inv_as = 0.0;
  double r0_ratio = 0.0;
};

// Above this |r0|/d_perp the broad-resonance treatment is questionable.
inline constexpr double kBroadResonanceLimit = 0.1;

// Throws DomainError unless lambda > 0 and r0_ratio >= 0 (both finite).
void validate(const TrapParams& p);

// Non-fatal diagnostic when r0_ratio exceeds kBroadResonanceLimit.
std::optional<std::string> broad_resonance_warning(const TrapParams& p);

struct BranchPoint {
  double inv_as = 0.0;
  double x = 0.0;      // E / (2 hbar omega_perp) - 1 - lambda/2
  double beta2 = 0.0;  // closed-channel (molecular) fraction
};

// One adiabatic level followed across a sweep of inv_as.
// branch 0 is the bound level below x = 0; branch n >= 1 lives between the
// (n-1)-th and n-th distinct poles of the noninteracting lattice.
struct Branch {
  int branch_index = 0;
  TrapParams base;  // inv_as of base is ignored
  std::vector<BranchPoint> points;
};

struct BranchInterval {
  double lo;  // -infinity for branch 0
  double hi;
};

struct SolveOptions {
  double x_tol = 1e-10;
  int probes = 64;
  // Most negative x the bound-branch search will expand to.
  double lower_search_limit = -1e6;
  // Largest energy whose pole interval may be addressed.
  double x_max = 12.0;
  FOptions f;
};

// Left minus right side of the quantization condition:
//   sqrt(2 lambda) [d/a_s + r0_ratio (x + 1 + lambda/2)] + (lambda/sqrt(pi)) F(-x/lambda, 1/lambda)
// with d/a_s = -inv_as. Strictly increasing in x between poles.
double quantization_residual(double x, const TrapParams& p, const FOptions& opt = {});

// F(-x/lambda, 1/lambda), the trap function in the energy variable.
double trap_function(double x, double lambda, const FOptions& opt = {});

BranchInterval branch_interval(int branch_index, double lambda, double x_max = 12.0);

// Unique root of quantization_residual in the branch's pole interval, with
// beta2 filled in. Throws NoRootError / MultipleRootsError.
BranchPoint solve_branch_point(int branch_index, const TrapParams& p, const SolveOptions& opt = {});

// Solves every grid value in order; each solve brackets from the previous
// root since x increases with inv_as. Errors are rethrown with the offending
// grid value in the message (same exception type).
Branch trace_branch(int branch_index, std::span<const double> inv_as_grid, const TrapParams& base,
                    const SolveOptions& opt = {});

// beta2 = r0_ratio * dx/d(inv_as) by implicit differentiation of the
// quantization condition at a root x.
double molecular_fraction_at(double x, const TrapParams& p, const FOptions& opt = {});

double molecular_fraction(const Branch& branch, std::size_t at_index);

// Cross-check: r0_ratio times a second-order finite difference of x over the
// traced grid (centered inside, one-sided at the ends). Needs >= 3 points.
double molecular_fraction_grid(const Branch& branch, std::size_t at_index);

// Experimental Feshbach parameters, any consistent unit system.
struct FeshbachParams {
  double a_bg = 0.0;   // background scattering length
  double B0 = 0.0;     // resonance position
  double Delta = 0.0;  // resonance width
  double mu = 0.0;     // magnetic moment difference open/closed channel
  double m = 0.0;      // atomic mass
  double hbar = 1.054571817e-34;
};

struct ScatteringParams {
  double a_s;
  double r0;
};

// a_s = a_bg (1 - Delta/(B - B0)), r0 = -2 hbar^2 / (m mu a_bg Delta).
// Throws DomainError at B = B0 or for Delta = 0, mu = 0.
ScatteringParams feshbach_map(double B, const FeshbachParams& fp);

// Dimensionless trap parameters for oscillator length d_perp.
TrapParams to_trap_params(const ScatteringParams& sp, double d_perp, double lambda);

}  // namespace trapent
