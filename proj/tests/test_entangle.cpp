#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "trapent/entangle.hpp"
#include "trapent/errors.hpp"
#include "trapent/oracles.hpp"

using namespace trapent;

TEST_CASE("entropy of weight vectors") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(entropy(half) == doctest::Approx(std::numbers::ln2));
  const std::vector<double> pure{1.0, 0.0, 1e-20};
  CHECK(entropy(pure) == 0.0);
  const std::vector<double> short_sum{0.5, 0.4};
  CHECK_THROWS_AS(entropy(short_sum), NormalizationError);
  CHECK(total_entropy(0.25) == doctest::Approx(0.25 + std::numbers::ln2));
}

TEST_CASE("relative ground state is a product state") {
  const auto rel = RelativeExpansion::from_coefficients({4, 4}, {{{0, 0, 0}, 1.0}});
  const SchmidtSpectrum s = schmidt(assemble_amplitude(rel));
  CHECK(s.kappa2.front() == doctest::Approx(1.0));
  CHECK(s.spatial_entropy == doctest::Approx(0.0).scale(1.0));
  CHECK(s.total_entropy == doctest::Approx(std::numbers::ln2));
}

TEST_CASE("one relative quantum pair splits 1/2, 1/4, 1/4") {
  const auto rel = RelativeExpansion::from_coefficients({4, 4}, {{{2, 0, 0}, 1.0}});
  const SchmidtSpectrum s = schmidt(assemble_amplitude(rel));
  REQUIRE(s.kappa2.size() >= 3);
  CHECK(s.kappa2[0] == doctest::Approx(0.5));
  CHECK(s.kappa2[1] == doctest::Approx(0.25));
  CHECK(s.kappa2[2] == doctest::Approx(0.25));
  CHECK(s.spatial_entropy == doctest::Approx(std::log(2.0 * std::numbers::sqrt2)).epsilon(1e-13));
}

TEST_CASE("blocked Schmidt weights equal dense singular values") {
  for (double x : {-2.3, 0.41, 0.9}) {
    const AmplitudeMatrix amp = assemble_amplitude(relative_expansion(x, 5.0 / 6.0, {6, 6}));
    const SchmidtSpectrum s = schmidt(amp);
    const std::vector<double> dense = oracle::dense_schmidt_weights(amp);
    REQUIRE(dense.size() == s.kappa2.size());
    for (std::size_t i = 0; i < dense.size(); ++i) CHECK(std::abs(dense[i] - s.kappa2[i]) < 1e-12);
    for (std::size_t i = 1; i < s.kappa2.size(); ++i) CHECK(s.kappa2[i] <= s.kappa2[i - 1]);
  }
}

TEST_CASE("asymmetric blocks are rejected") {
  AmplitudeMatrix amp = assemble_amplitude(relative_expansion(0.3, 1.0, {4, 4}));
  auto& block = amp.sectors()[0].block;
  REQUIRE(block.rows() > 1);
  block(0, 1) += 1e-6;
  CHECK_THROWS_AS(schmidt(amp), SymmetryError);
}

TEST_CASE("power-law extrapolation") {
  std::vector<std::pair<int, double>> s;
  for (int K : {8, 12, 16}) s.emplace_back(K, 2.0 - 3.0 * std::pow(K, -1.5));
  CHECK(extrapolate_power_law(s) == doctest::Approx(2.0).epsilon(1e-9));

  const std::vector<std::pair<int, double>> wobbly{{8, 1.0}, {12, 1.2}, {16, 1.1}};
  CHECK(extrapolate_power_law(wobbly) == 1.1);
  const std::vector<std::pair<int, double>> two{{8, 1.0}, {12, 1.2}};
  CHECK(extrapolate_power_law(two) == 1.2);
}

TEST_CASE("K ramp at fixed energy") {
  const std::vector<int> ramp{4, 6, 8, 10};
  const ConvergenceReport loose = converge_entropy_at(0.2, 1.0, ramp, 0.5);
  REQUIRE(loose.entropies.size() == 4);
  CHECK(loose.converged);
  CHECK(loose.x == 0.2);
  for (std::size_t i = 1; i < loose.entropies.size(); ++i) {
    CHECK(loose.entropies[i].first > loose.entropies[i - 1].first);
  }
  const ConvergenceReport tight = converge_entropy_at(0.2, 1.0, ramp, 1e-12);
  CHECK_FALSE(tight.converged);
  CHECK(tight.entropies.back().second ==
        doctest::Approx(entanglement_at(0.2, 1.0, truncation_for(10, 1.0)).spatial_entropy));
}

TEST_CASE("branch entropy through the solver") {
  const TrapParams p{1.0, 0.0, 0.0};
  const SchmidtSpectrum s = branch_entanglement(1, p, 6);
  CHECK(s.spatial_entropy == doctest::Approx(entanglement_at(0.5, 1.0, {6, 6}).spatial_entropy).epsilon(1e-8));
  CHECK(s.spatial_entropy > 0.0);
}
