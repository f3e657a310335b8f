#include <doctest.h>

#include <cmath>

#include "trapent/errors.hpp"
#include "trapent/oracles.hpp"
#include "trapent/toymodel.hpp"

using namespace trapent;
using namespace trapent::toy;

TEST_CASE("closed-form ground state matches 3x3 diagonalization") {
  for (double g : {0.0, 0.05, 0.7, 3.0, 250.0}) {
    for (double delta : {-1.5, 0.0, 0.6}) {
      CAPTURE(g);
      CAPTURE(delta);
      const ToyParams p{1.3, delta, g};
      const ToyGroundState gs = toy_ground_state(p);
      const auto c = oracle::toy_ground_state_3x3(p);
      CHECK(gs.a00 == doctest::Approx(c[0]).epsilon(1e-12));
      CHECK(gs.a_sym == doctest::Approx((c[1] + c[2]) / std::sqrt(2.0)).epsilon(1e-12));
      CHECK(toy_entropy(gs.a00, gs.a_sym) ==
            doctest::Approx(oracle::toy_entropy_bruteforce(c)).epsilon(1e-10));
    }
  }
}

TEST_CASE("entropy depends only on g / (omega - delta)") {
  const ToyGroundState gs = toy_ground_state({2.0, 0.5, 1.5});
  CHECK(toy_entropy(gs.a00, gs.a_sym) == doctest::Approx(toy_entropy_at(1.0)).epsilon(1e-14));
}

TEST_CASE("limits") {
  CHECK(toy_entropy_at(0.0) == 0.0);
  const ToyGroundState free = toy_ground_state({1.0, 0.0, 0.0});
  CHECK(free.a00 == 1.0);
  CHECK(free.a_sym == 0.0);
  CHECK(toy_saturation_entropy() == doctest::Approx(0.245775).epsilon(1e-5));
  CHECK(toy_entropy_at(1e6) == doctest::Approx(toy_saturation_entropy()).epsilon(1e-6));
  CHECK(toy_entropy_at(1e6) < toy_saturation_entropy());
}

TEST_CASE("invalid toy parameters") {
  CHECK_THROWS_AS(validate(ToyParams{1.0, 1.0, 0.1}), DomainError);
  CHECK_THROWS_AS(validate(ToyParams{1.0, 2.0, 0.1}), DomainError);
  CHECK_THROWS_AS(validate(ToyParams{1.0, 0.0, -0.1}), DomainError);
  CHECK_THROWS_AS(toy_entropy_at(-1.0), DomainError);
  CHECK_THROWS_AS(toy_entropy(0.9, 0.1), NormalizationError);
}
