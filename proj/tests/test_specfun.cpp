#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "trapent/errors.hpp"
#include "trapent/oracles.hpp"
#include "trapent/specfun.hpp"

using namespace trapent;

namespace {

// Direct double-exponential quadrature of the defining integral (u > 0 only).
// Below t0 the integrand is replaced by its leading small-t behaviour
// (eta/2 + 1/4 - u) t^{-1/2}, which avoids the cancellation between the terms.
double F_direct(double u, double eta) {
  auto f = [&](double t) {
    return eta * std::exp(-u * t) / (std::sqrt(-std::expm1(-t)) * -std::expm1(-eta * t)) -
           std::pow(t, -1.5);
  };
  constexpr double t0 = 1e-8;
  boost::math::quadrature::tanh_sinh<double> head;
  boost::math::quadrature::exp_sinh<double> tail;
  return 2.0 * std::sqrt(t0) * (0.5 * eta + 0.25 - u) + head.integrate(f, t0, 1.0) +
         tail.integrate([&](double s) { return f(1.0 + s); });
}

}  // namespace

TEST_CASE("gamma agrees with the Stirling oracle") {
  for (double z : {-3.7, -1.5, -0.25, 0.1, 0.5, 1.0, 2.5, 7.3, 20.0, 41.5}) {
    CAPTURE(z);
    CHECK(gamma_fn(z) == doctest::Approx(oracle::gamma_stirling(z)).epsilon(1e-12));
  }
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("gamma poles") {
  for (double z : {0.0, -1.0, -4.0}) {
    CHECK_THROWS_AS(gamma_fn(z), DomainError);
    CHECK(reciprocal_gamma(z) == 0.0);
  }
  CHECK(reciprocal_gamma(0.5) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("isotropic anchors") {
  CHECK(eval_F({1.0, 1.0}) == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(eval_F({2.0, 1.0}) == doctest::Approx(-4.0).epsilon(1e-10));
  CHECK(F_spherical_closed_form(-1.0) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("continued F matches the spherical closed form below and between poles") {
  for (double x : {-7.3, -1.5, -0.3, 0.2, 0.5, 0.93, 1.25, 1.75, 2.6, 4.4}) {
    CAPTURE(x);
    const double ref = oracle::F_spherical(x);
    CHECK(std::abs(eval_F({-x, 1.0}) - ref) <= 1e-9 * (1.0 + std::abs(ref)));
    CHECK(F_spherical_closed_form(x) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("closed form vanishes at half-integers and rejects integer poles") {
  CHECK(F_spherical_closed_form(0.5) == 0.0);
  CHECK(F_spherical_closed_form(2.5) == 0.0);
  CHECK(std::abs(eval_F({-0.5, 1.0})) < 1e-10);
  CHECK_THROWS_AS(F_spherical_closed_form(0.0), DomainError);
  CHECK_THROWS_AS(F_spherical_closed_form(3.0), DomainError);
}

TEST_CASE("anisotropic F matches direct quadrature of the definition") {
  for (double eta : {0.05, 0.5, 6.0 / 5.0, 3.0, 20.0}) {
    for (double u : {0.3, 1.0, 4.5}) {
      CAPTURE(eta);
      CAPTURE(u);
      const double ref = F_direct(u, eta);
      CHECK(std::abs(eval_F({u, eta}) - ref) <= 1e-8 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("large-u asymptote") {
  // F(u, eta) = -2 sqrt(pi u) + O(1) as u grows.
  const double u = 1e6;
  CHECK(eval_F({u, 0.7}) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi * u)).epsilon(1e-3));
}

TEST_CASE("F increases with energy between poles") {
  for (double eta : {1.0, 1.2, 0.05}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double x = -3.0; x < -0.01; x += 0.05) {
      const double f = eval_F({-x, eta});
      CHECK(f > prev);
      prev = f;
    }
  }
}

TEST_CASE("pole guard") {
  try {
    eval_F({-1.0 - 2.0 * 0.75, 0.75});
    FAIL("expected NearPoleError");
  } catch (const NearPoleError& e) {
    CHECK(e.distance() < kPoleExclusionRadius);
  }
  CHECK_THROWS_AS(eval_F({1e-8, 1.0}), NearPoleError);
  CHECK_NOTHROW(eval_F({-1.0 + 1e-4, 1.0}));
}

TEST_CASE("domain and term-cap errors") {
  CHECK_THROWS_AS(eval_F({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(eval_F({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(eval_F({std::nan(""), 1.0}), DomainError);
  FOptions tight;
  tight.series_term_cap = 3;
  CHECK_THROWS_AS(eval_F({-0.5, 0.01}, tight), SeriesCapError);
}

TEST_CASE("pole lattice") {
  const PoleLattice iso = enumerate_poles(1.0, 3.0);
  REQUIRE(iso.size() == 4);
  for (int n = 0; n < 4; ++n) {
    CHECK(iso.values[n] == doctest::Approx(n));
    CHECK(iso.multiplicity[n] == n + 1);
  }
  const PoleLattice half = enumerate_poles(0.5, 1.0);
  REQUIRE(half.size() == 3);
  CHECK(half.values[1] == doctest::Approx(0.5));
  CHECK(half.multiplicity[2] == 2);
  const PoleLattice cigar = enumerate_poles(5.0 / 6.0, 2.0);
  CHECK(cigar.values[0] == 0.0);
  CHECK(cigar.values[1] == doctest::Approx(5.0 / 6.0));
  CHECK(cigar.values[2] == doctest::Approx(1.0));
  CHECK_THROWS_AS(enumerate_poles(0.0, 1.0), DomainError);
}
