#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "trapent/errors.hpp"
#include "trapent/oracles.hpp"
#include "trapent/spectrum.hpp"

using namespace trapent;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(TrapParams{0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(TrapParams{-1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(TrapParams{1.0, 0.0, -0.01}), DomainError);
  CHECK_THROWS_AS(validate(TrapParams{1.0, std::numeric_limits<double>::infinity(), 0.0}),
                  DomainError);
  CHECK_NOTHROW(validate(TrapParams{20.0, -3.0, 0.04}));
}

TEST_CASE("broad-resonance warning") {
  CHECK_FALSE(broad_resonance_warning({1.0, 0.0, 0.04}).has_value());
  CHECK(broad_resonance_warning({1.0, 0.0, 0.2}).has_value());
}

TEST_CASE("branch intervals follow the pole lattice") {
  const BranchInterval b0 = branch_interval(0, 1.0);
  CHECK(b0.lo == -std::numeric_limits<double>::infinity());
  CHECK(b0.hi == 0.0);
  const BranchInterval b2 = branch_interval(2, 5.0 / 6.0);
  CHECK(b2.lo == doctest::Approx(5.0 / 6.0));
  CHECK(b2.hi == doctest::Approx(1.0));
  const BranchInterval c1 = branch_interval(1, 1.0 / 20.0);
  CHECK(c1.hi == doctest::Approx(1.0 / 20.0));
  CHECK_THROWS_AS(branch_interval(-1, 1.0), DomainError);
  CHECK_THROWS_AS(branch_interval(500, 1.0, 12.0), DomainError);
}

TEST_CASE("residual increases between poles") {
  const TrapParams p{7.0 / 6.0, 0.3, 0.04};
  for (int b : {0, 1, 2, 3}) {
    const BranchInterval iv = branch_interval(b, p.lambda);
    const double lo = b == 0 ? -6.0 : iv.lo;
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < 40; ++i) {
      const double x = lo + (iv.hi - lo) * i / 40.0;
      const double r = quantization_residual(x, p);
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("spherical roots agree with the closed-form bisection oracle") {
  for (double inv : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
    for (int b : {0, 1, 2, 3}) {
      CAPTURE(inv);
      CAPTURE(b);
      const BranchInterval iv = branch_interval(b, 1.0);
      const double lo = b == 0 ? -100.0 : iv.lo;
      const double ref = oracle::spherical_root(inv, lo + 1e-12, iv.hi - 1e-12);
      CHECK(solve_branch_point(b, {1.0, inv, 0.0}).x == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("deep bound level approaches the free dimer energy") {
  // sqrt2 d/a_s = 2 sqrt(-x) + O(1/sqrt(-x)) for lambda = 1, so x -> -(d/a_s)^2 / 2.
  const double x = solve_branch_point(0, {1.0, -30.0, 0.0}).x;
  CHECK(x == doctest::Approx(-450.0).epsilon(0.01));
}

TEST_CASE("bound search respects its limit") {
  SolveOptions opt;
  opt.lower_search_limit = -10.0;
  CHECK_THROWS_AS(solve_branch_point(0, {1.0, -30.0, 0.0}, opt), NoRootError);
}

TEST_CASE("trace is strictly increasing and reports grid context on failure") {
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(-4.0 + 0.2 * i);
  for (double lambda : {1.0 / 20.0, 5.0 / 6.0, 20.0}) {
    const Branch br = trace_branch(1, grid, {lambda, 0.0, 0.04});
    REQUIRE(br.points.size() == grid.size());
    const BranchInterval iv = branch_interval(1, lambda);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(br.points[i].x > iv.lo);
      CHECK(br.points[i].x < iv.hi);
      if (i) CHECK(br.points[i].x > br.points[i - 1].x);
    }
  }
  SolveOptions opt;
  opt.lower_search_limit = -10.0;
  const std::vector<double> deep{-30.0, -20.0};
  try {
    trace_branch(0, deep, {1.0, 0.0, 0.0}, opt);
    FAIL("expected NoRootError");
  } catch (const NoRootError& e) {
    CHECK(std::string(e.what()).find("-30") != std::string::npos);
  }
  const std::vector<double> unsorted{1.0, 0.0};
  CHECK_THROWS_AS(trace_branch(1, unsorted, {1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("molecular fraction: implicit derivative vs grid difference") {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(-1.0 + 0.01 * i);
  const Branch br = trace_branch(1, grid, {5.0 / 6.0, 0.0, 0.04});
  for (std::size_t i : {std::size_t{0}, std::size_t{7}, std::size_t{20}}) {
    CAPTURE(i);
    CHECK(molecular_fraction(br, i) == doctest::Approx(molecular_fraction_grid(br, i)).epsilon(1e-4));
    CHECK(molecular_fraction(br, i) == doctest::Approx(br.points[i].beta2).epsilon(1e-12));
  }
  CHECK(molecular_fraction_at(0.3, {1.0, 0.0, 0.0}) == 0.0);
  const std::vector<double> two{0.0, 1.0};
  CHECK_THROWS_AS(molecular_fraction_grid(trace_branch(1, two, {1.0, 0.0, 0.04}), 0), DomainError);
}

TEST_CASE("Feshbach map and trap units") {
  FeshbachParams fp;
  fp.a_bg = 2.0;
  fp.B0 = 10.0;
  fp.Delta = 0.5;
  fp.mu = 4.0;
  fp.m = 3.0;
  fp.hbar = 1.0;
  const ScatteringParams sp = feshbach_map(11.0, fp);
  CHECK(sp.a_s == doctest::Approx(2.0 * (1.0 - 0.5)));
  CHECK(sp.r0 == doctest::Approx(-2.0 / (3.0 * 4.0 * 2.0 * 0.5)));
  CHECK_THROWS_AS(feshbach_map(10.0, fp), DomainError);
  fp.Delta = 0.0;
  CHECK_THROWS_AS(feshbach_map(11.0, fp), DomainError);

  const TrapParams tp = to_trap_params({-4.0, -0.5}, 2.0, 5.0 / 6.0);
  CHECK(tp.inv_as == doctest::Approx(0.5));
  CHECK(tp.r0_ratio == doctest::Approx(0.25));
  CHECK(tp.lambda == doctest::Approx(5.0 / 6.0));
  CHECK_THROWS_AS(to_trap_params({0.0, 1.0}, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(to_trap_params({1.0, 1.0}, 0.0, 1.0), DomainError);
}
