#pragma once

#include <span>
#include <utility>
#include <vector>

#include "trapent/pairstate.hpp"
#include "trapent/spectrum.hpp"

namespace trapent {

struct SchmidtSpectrum {
  std::vector<double> kappa2;  // descending Schmidt weights
  double spatial_entropy = 0.0;
  double total_entropy = 0.0;  // spatial + ln 2 from the spin singlet
};

// Symmetric Schmidt decomposition: each parity block is real symmetric, so its
// Schmidt values are the absolute eigenvalues. Weights from all eight blocks
// are pooled and sorted. Throws SymmetryError if a block is asymmetric beyond
// 1e-10, NormalizationError if the weights do not sum to one within 1e-8.
SchmidtSpectrum schmidt(const AmplitudeMatrix& amp);

// -sum w ln w in nats; weights below 1e-16 contribute nothing.
double entropy(std::span<const double> kappa2);

double total_entropy(double spatial);

// Relative expansion -> particle amplitude -> Schmidt spectrum at fixed x.
SchmidtSpectrum entanglement_at(double x, double lambda, TruncationCaps caps);

// Solves the branch point and decomposes it at truncation_for(K, lambda).
SchmidtSpectrum branch_entanglement(int branch_index, const TrapParams& p, int K,
                                    const SolveOptions& opt = {});

struct ConvergenceReport {
  std::vector<std::pair<int, double>> entropies;  // (K, spatial entropy), K increasing
  double extrapolated = 0.0;
  bool converged = false;
  double tolerance = 0.0;
  double x = 0.0;  // energy the ramp was evaluated at
};

// Entropy at each K of the schedule. Converged when the last two values differ
// by less than tol. The extrapolation fits S(K) = S_inf + A K^{-p} through the
// last three values (the last two differences); it falls back to the last
// value when the differences are not a decaying same-sign pair.
ConvergenceReport converge_entropy_at(double x, double lambda, std::span<const int> K_schedule,
                                      double tol);

ConvergenceReport converge_entropy(int branch_index, const TrapParams& p,
                                   std::span<const int> K_schedule, double tol,
                                   const SolveOptions& opt = {});

// Power-law tail extrapolation used by converge_entropy_at.
double extrapolate_power_law(std::span<const std::pair<int, double>> entropies);

}  // namespace trapent
