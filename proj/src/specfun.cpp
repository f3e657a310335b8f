#include "trapent/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trapent/errors.hpp"

namespace trapent {

namespace {

bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::floor(z); }

// log(sinh(w)/w) for w >= 0 without cancellation at small w.
double log_sinhc(double w) {
  if (w < 0.1) {
    const double w2 = w * w;
    return w2 * (1.0 / 6.0 +
                 w2 * (-1.0 / 180.0 +
                       w2 * (1.0 / 2835.0 + w2 * (-1.0 / 37800.0 + w2 / 467775.0))));
  }
  if (w < 20.0) return std::log(std::sinh(w) / w);
  return w - std::log(2.0 * w) + std::log1p(-std::exp(-2.0 * w));
}

// log(z / (1 - e^{-z})) for z >= 0.
double log_bose(double z) { return 0.5 * z - log_sinhc(0.5 * z); }

// Integrand of the (0, 1] piece after t = s^2:
//   2 s [f(t) - t^{-3/2}] = 2 (P(t) - 1) / t,
// with P(t) = t^{3/2} f(t) assembled in log form so that P - 1 keeps full
// relative precision as t -> 0.
double near_origin_integrand(double s, double u, double eta) {
  const double t = s * s;
  if (t == 0.0) return 2.0 * (0.5 * eta + 0.25 - u);
  const double log_p = log_bose(eta * t) + 0.5 * log_bose(t) - u * t;
  return 2.0 * std::expm1(log_p) / t;
}

double quadrature_part(double u, double eta, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  auto g = [u, eta](double s) { return near_origin_integrand(s, u, eta); };
  double err = 0.0;
  return gauss_kronrod<double, 15>::integrate(g, 0.0, 1.0, 20, rel_tol, &err);
}

// sum_{p,q} c_p eta e^{-a} / a with a = u + p + q*eta and c_p = binom(2p,p)/4^p.
double series_part(double u, double eta, const FOptions& opt) {
  const double ratio = std::exp(-eta);
  const double q_tail = -1.0 / std::expm1(-eta);  // 1 / (1 - e^{-eta})
  const double p_tail = 1.0 / std::expm1(1.0);    // e^{-1} / (1 - e^{-1})
  double sum = 0.0;
  double cp = 1.0;
  std::size_t terms = 0;
  for (int p = 0;; ++p) {
    if (p > 0) cp *= (2.0 * p - 1.0) / (2.0 * p);
    const double a0 = u + p;
    double w = std::exp(-a0);
    if (!std::isfinite(w)) {
      throw DomainError("eval_F: u too far below the first pole for the series continuation");
    }
    const double weight = cp * eta;
    double inner = 0.0;
    for (int q = 0;; ++q) {
      const double a = a0 + q * eta;
      if (std::abs(a) < opt.exclusion_radius) {
        std::ostringstream msg;
        msg << "eval_F: u = " << u << " within " << opt.exclusion_radius << " of pole -("
            << p << " + " << q << "*" << eta << ")";
        throw NearPoleError(msg.str(), std::abs(a));
      }
      const double term = w / a;
      inner += term;
      if (++terms > opt.series_term_cap) {
        throw SeriesCapError("eval_F: series term cap reached");
      }
      const double scale = std::abs(inner) + std::abs(sum) / weight;
      if (a > 0.0 && std::abs(term) * q_tail <= opt.series_rel_tol * scale) break;
      w *= ratio;
    }
    sum += weight * inner;
    if (a0 > 0.0) {
      const double tail_bound = weight * std::exp(-a0) / a0 * q_tail * p_tail;
      if (tail_bound <= opt.series_rel_tol * std::abs(sum)) break;
    }
  }
  return sum;
}

}  // namespace

double gamma_fn(double z) {
  if (!std::isfinite(z)) throw DomainError("gamma_fn: non-finite argument");
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "gamma_fn: pole at z = " << z;
    throw DomainError(msg.str());
  }
  return std::tgamma(z);
}

double reciprocal_gamma(double z) {
  if (!std::isfinite(z)) throw DomainError("reciprocal_gamma: non-finite argument");
  if (is_nonpositive_integer(z)) return 0.0;
  return 1.0 / std::tgamma(z);
}

double eval_F(FArgs args, const FOptions& opt) {
  if (!(args.eta > 0.0) || !std::isfinite(args.eta)) {
    throw DomainError("eval_F: eta must be positive and finite");
  }
  if (!std::isfinite(args.u)) throw DomainError("eval_F: non-finite u");
  // The series sees every pole, so run it first and fail fast near one.
  const double series = series_part(args.u, args.eta, opt);
  return quadrature_part(args.u, args.eta, opt.quad_rel_tol) + series - 2.0;
}

double F_spherical_closed_form(double x) {
  const double z = -x;
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "F_spherical_closed_form: Gamma(-x) pole at x = " << x;
    throw DomainError(msg.str());
  }
  return -2.0 * std::sqrt(std::numbers::pi) * gamma_fn(z) * reciprocal_gamma(z - 0.5);
}

PoleLattice enumerate_poles(double lambda, double x_max) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("enumerate_poles: lambda must be positive");
  }
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw DomainError("enumerate_poles: x_max must be positive");
  }
  const double limit = x_max + kPoleMergeTolerance;
  std::vector<double> raw;
  for (int q = 0; q * lambda <= limit; ++q) {
    for (int p = 0; p + q * lambda <= limit; ++p) raw.push_back(p + q * lambda);
  }
  std::sort(raw.begin(), raw.end());

  PoleLattice lattice;
  for (double v : raw) {
    if (!lattice.values.empty() && v - lattice.values.back() < kPoleMergeTolerance) {
      ++lattice.multiplicity.back();
    } else {
      lattice.values.push_back(v);
      lattice.multiplicity.push_back(1);
    }
  }
  // Cluster representatives are the smallest member; the origin is exact.
  lattice.values.front() = 0.0;
  return lattice;
}

}  // namespace trapent
