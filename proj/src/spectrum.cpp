#include "trapent/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "trapent/errors.hpp"

namespace trapent {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Distance kept between probes and the bracketing poles, in x.
double pole_offset(double lambda, double width, const FOptions& f) {
  return std::min(4.0 * lambda * f.exclusion_radius, 1e-3 * width);
}

// Safeguarded Illinois iteration on a sign-changing bracket fa < 0 <= fb.
template <class Fn>
double refine_root(Fn&& residual, double a, double fa, double b, double fb, double tol) {
  // Coarse bisection first; the residual is strongly curved next to a pole.
  const double coarse = 1e-3 * (b - a);
  while (b - a > std::max(coarse, tol)) {
    const double m = 0.5 * (a + b);
    const double fm = residual(m);
    if (fm == 0.0) return m;
    if (fm < 0.0) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  int side = 0;
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    double x = b - fb * (b - a) / (fb - fa);
    if (it >= 60 || !(x > a && x < b)) x = 0.5 * (a + b);
    const double fx = residual(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
  }
  return 0.5 * (a + b);
}

template <class Fn>
double scan_and_solve(Fn&& residual, double lo, double hi, const SolveOptions& opt) {
  const int n = std::max(opt.probes, 2);
  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
    fs[i] = residual(xs[i]);
  }
  int changes = 0;
  int at = -1;
  for (int i = 0; i + 1 < n; ++i) {
    if ((fs[i] >= 0.0) != (fs[i + 1] >= 0.0)) {
      ++changes;
      at = i;
    }
  }
  if (changes == 0) {
    std::ostringstream msg;
    msg << "no sign change of the quantization residual on [" << lo << ", " << hi << "]";
    throw NoRootError(msg.str());
  }
  if (changes > 1) {
    std::ostringstream msg;
    msg << changes << " sign changes of the quantization residual on [" << lo << ", " << hi
        << "]; the broad-resonance assumption is violated";
    throw MultipleRootsError(msg.str());
  }
  if (fs[at] > fs[at + 1]) {
    std::ostringstream msg;
    msg << "quantization residual decreases across its root near x = " << xs[at];
    throw RootError(msg.str());
  }
  return refine_root(residual, xs[at], fs[at], xs[at + 1], fs[at + 1], opt.x_tol);
}

// Root of the residual for a branch; `seed` is a known lower bound on the root.
double solve_root(int branch_index, const TrapParams& p, const SolveOptions& opt,
                  std::optional<double> seed) {
  validate(p);
  auto residual = [&](double x) { return quantization_residual(x, p, opt.f); };
  const BranchInterval iv = branch_interval(branch_index, p.lambda, opt.x_max);

  if (branch_index == 0) {
    const double hi = -pole_offset(p.lambda, 1.0, opt.f);
    double lo = std::numeric_limits<double>::quiet_NaN();
    if (seed && *seed < hi) {
      const double s = *seed - 10.0 * opt.x_tol;
      if (residual(s) < 0.0) lo = s;
    }
    if (std::isnan(lo)) {
      lo = -1.0;
      while (residual(lo) >= 0.0) {
        lo *= 2.0;
        if (lo < opt.lower_search_limit) {
          throw NoRootError("bound branch: residual stays non-negative down to the search limit");
        }
      }
    }
    return scan_and_solve(residual, lo, hi, opt);
  }

  const double off = pole_offset(p.lambda, iv.hi - iv.lo, opt.f);
  const double lo = iv.lo + off;
  const double hi = iv.hi - off;
  if (seed && *seed - 10.0 * opt.x_tol > lo && *seed < hi) {
    try {
      return scan_and_solve(residual, *seed - 10.0 * opt.x_tol, hi, opt);
    } catch (const NoRootError&) {
      // fall through to the full interval
    }
  }
  return scan_and_solve(residual, lo, hi, opt);
}

double nearest_pole_distance(double x, double lambda) {
  const PoleLattice lat = enumerate_poles(lambda, std::max(x, 0.0) + 2.0 * std::max(1.0, lambda));
  double d = std::numeric_limits<double>::infinity();
  for (double v : lat.values) d = std::min(d, std::abs(x - v));
  return d;
}

}  // namespace

void validate(const TrapParams& p) {
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) {
    throw DomainError("trap aspect ratio lambda must be positive and finite");
  }
  if (!(p.r0_ratio >= 0.0) || !std::isfinite(p.r0_ratio)) {
    throw DomainError("r0_ratio must be non-negative and finite");
  }
  if (!std::isfinite(p.inv_as)) throw DomainError("inv_as must be finite");
}

std::optional<std::string> broad_resonance_warning(const TrapParams& p) {
  if (p.r0_ratio <= kBroadResonanceLimit) return std::nullopt;
  std::ostringstream msg;
  msg << "r0_ratio = " << p.r0_ratio << " exceeds " << kBroadResonanceLimit
      << "; the broad-resonance model needs |r0| << d_perp, |a_s|";
  return msg.str();
}

double trap_function(double x, double lambda, const FOptions& opt) {
  return eval_F({-x / lambda, 1.0 / lambda}, opt);
}

double quantization_residual(double x, const TrapParams& p, const FOptions& opt) {
  const double lhs =
      std::sqrt(2.0 * p.lambda) * (-p.inv_as + p.r0_ratio * (x + 1.0 + 0.5 * p.lambda));
  return lhs + p.lambda * kInvSqrtPi * trap_function(x, p.lambda, opt);
}

BranchInterval branch_interval(int branch_index, double lambda, double x_max) {
  if (branch_index < 0) throw DomainError("branch index must be non-negative");
  if (branch_index == 0) return {-std::numeric_limits<double>::infinity(), 0.0};
  const PoleLattice lat = enumerate_poles(lambda, x_max);
  if (static_cast<std::size_t>(branch_index) >= lat.size()) {
    std::ostringstream msg;
    msg << "branch " << branch_index << " lies above x_max = " << x_max;
    throw DomainError(msg.str());
  }
  return {lat.values[branch_index - 1], lat.values[branch_index]};
}

BranchPoint solve_branch_point(int branch_index, const TrapParams& p, const SolveOptions& opt) {
  const double x = solve_root(branch_index, p, opt, std::nullopt);
  return {p.inv_as, x, molecular_fraction_at(x, p, opt.f)};
}

Branch trace_branch(int branch_index, std::span<const double> inv_as_grid, const TrapParams& base,
                    const SolveOptions& opt) {
  if (!std::is_sorted(inv_as_grid.begin(), inv_as_grid.end())) {
    throw DomainError("trace_branch: inv_as grid must be sorted ascending");
  }
  Branch branch{branch_index, base, {}};
  branch.points.reserve(inv_as_grid.size());
  std::optional<double> seed;
  for (double inv : inv_as_grid) {
    TrapParams p = base;
    p.inv_as = inv;
    try {
      const double x = solve_root(branch_index, p, opt, seed);
      branch.points.push_back({inv, x, molecular_fraction_at(x, p, opt.f)});
      seed = x;
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "branch " << branch_index << " at inv_as = " << inv << ": " << e.what();
      if (dynamic_cast<const MultipleRootsError*>(&e)) throw MultipleRootsError(msg.str());
      if (dynamic_cast<const NoRootError*>(&e)) throw NoRootError(msg.str());
      if (dynamic_cast<const NearPoleError*>(&e)) {
        throw NearPoleError(msg.str(), static_cast<const NearPoleError&>(e).distance());
      }
      if (dynamic_cast<const DomainError*>(&e)) throw DomainError(msg.str());
      throw Error(msg.str());
    }
  }
  return branch;
}

double molecular_fraction_at(double x, const TrapParams& p, const FOptions& opt) {
  validate(p);
  if (p.r0_ratio == 0.0) return 0.0;
  const double h = 1e-4 * std::min(nearest_pole_distance(x, p.lambda), 1.0);
  const double slope =
      (trap_function(x + h, p.lambda, opt) - trap_function(x - h, p.lambda, opt)) / (2.0 * h);
  const double s = std::sqrt(2.0 * p.lambda);
  return p.r0_ratio * s / (s * p.r0_ratio + p.lambda * kInvSqrtPi * slope);
}

double molecular_fraction(const Branch& branch, std::size_t at_index) {
  const BranchPoint& pt = branch.points.at(at_index);
  TrapParams p = branch.base;
  p.inv_as = pt.inv_as;
  return molecular_fraction_at(pt.x, p);
}

double molecular_fraction_grid(const Branch& branch, std::size_t at_index) {
  const auto& pts = branch.points;
  if (pts.size() < 3) throw DomainError("molecular_fraction_grid needs at least three points");
  if (at_index >= pts.size()) throw DomainError("molecular_fraction_grid: index out of range");
  auto t = [&](std::size_t i) { return pts[i].inv_as; };
  auto f = [&](std::size_t i) { return pts[i].x; };
  double deriv = 0.0;
  if (at_index == 0) {
    const double h1 = t(1) - t(0), h2 = t(2) - t(1);
    deriv = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f(0) + (h1 + h2) / (h1 * h2) * f(1) -
            h1 / (h2 * (h1 + h2)) * f(2);
  } else if (at_index == pts.size() - 1) {
    const std::size_t n = at_index;
    const double h1 = t(n - 1) - t(n - 2), h2 = t(n) - t(n - 1);
    deriv = (2 * h2 + h1) / (h2 * (h1 + h2)) * f(n) - (h1 + h2) / (h1 * h2) * f(n - 1) +
            h2 / (h1 * (h1 + h2)) * f(n - 2);
  } else {
    const std::size_t i = at_index;
    const double h1 = t(i) - t(i - 1), h2 = t(i + 1) - t(i);
    deriv = -h2 / (h1 * (h1 + h2)) * f(i - 1) + (h2 - h1) / (h1 * h2) * f(i) +
            h1 / (h2 * (h1 + h2)) * f(i + 1);
  }
  return branch.base.r0_ratio * deriv;
}

ScatteringParams feshbach_map(double B, const FeshbachParams& fp) {
  if (fp.Delta == 0.0) throw DomainError("feshbach_map: resonance width Delta must be nonzero");
  if (fp.mu == 0.0) throw DomainError("feshbach_map: magnetic moment difference mu must be nonzero");
  if (fp.a_bg == 0.0 || fp.m == 0.0) throw DomainError("feshbach_map: a_bg and m must be nonzero");
  if (B == fp.B0) throw DomainError("feshbach_map: field sits exactly on the resonance B0");
  const double a_s = std::isinf(B) ? fp.a_bg : fp.a_bg * (1.0 - fp.Delta / (B - fp.B0));
  const double r0 = -2.0 * fp.hbar * fp.hbar / (fp.m * fp.mu * fp.a_bg * fp.Delta);
  return {a_s, r0};
}

TrapParams to_trap_params(const ScatteringParams& sp, double d_perp, double lambda) {
  if (!(d_perp > 0.0)) throw DomainError("to_trap_params: d_perp must be positive");
  if (sp.a_s == 0.0) throw DomainError("to_trap_params: a_s = 0 has no finite inverse");
  TrapParams p{lambda, -d_perp / sp.a_s, std::abs(sp.r0) / d_perp};
  validate(p);
  return p;
}

}  // namespace trapent
