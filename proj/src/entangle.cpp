#include "trapent/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "trapent/errors.hpp"

namespace trapent {

SchmidtSpectrum schmidt(const AmplitudeMatrix& amp) {
  SchmidtSpectrum out;
  out.kappa2.reserve(amp.dimension());
  for (const auto& sec : amp.sectors()) {
    if (sec.block.size() == 0) continue;
    const double asym = (sec.block - sec.block.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
      std::ostringstream msg;
      msg << "schmidt: amplitude block asymmetric by " << asym;
      throw SymmetryError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sec.block, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("schmidt: eigensolver did not converge");
    for (double ev : es.eigenvalues()) out.kappa2.push_back(ev * ev);
  }
  std::sort(out.kappa2.begin(), out.kappa2.end(), std::greater<>());
  out.spatial_entropy = entropy(out.kappa2);
  out.total_entropy = total_entropy(out.spatial_entropy);
  return out;
}

double entropy(std::span<const double> kappa2) {
  double sum = 0.0;
  double s = 0.0;
  for (double w : kappa2) {
    if (w < 0.0) throw DomainError("entropy: negative Schmidt weight");
    sum += w;
    if (w >= 1e-16) s -= w * std::log(w);
  }
  if (std::abs(sum - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "entropy: Schmidt weights sum to " << sum;
    throw NormalizationError(msg.str());
  }
  return s;
}

double total_entropy(double spatial) {
  if (spatial < 0.0) throw DomainError("total_entropy: spatial entropy must be non-negative");
  return spatial + std::numbers::ln2;
}

SchmidtSpectrum entanglement_at(double x, double lambda, TruncationCaps caps) {
  return schmidt(assemble_amplitude(relative_expansion(x, lambda, caps)));
}

SchmidtSpectrum branch_entanglement(int branch_index, const TrapParams& p, int K,
                                    const SolveOptions& opt) {
  const BranchPoint pt = solve_branch_point(branch_index, p, opt);
  return entanglement_at(pt.x, p.lambda, truncation_for(K, p.lambda));
}

double extrapolate_power_law(std::span<const std::pair<int, double>> entropies) {
  const std::size_t n = entropies.size();
  if (n == 0) throw DomainError("extrapolate_power_law: no data");
  const double last = entropies.back().second;
  if (n < 3) return last;
  const auto [k1, s1] = entropies[n - 3];
  const auto [k2, s2] = entropies[n - 2];
  const auto [k3, s3] = entropies[n - 1];
  const double d1 = s2 - s1;
  const double d2 = s3 - s2;
  if (d1 == 0.0 || d2 == 0.0 || (d1 > 0) != (d2 > 0) || std::abs(d2) >= std::abs(d1)) return last;

  const double target = d2 / d1;
  auto ratio = [&](double p) {
    return (std::pow(k2, -p) - std::pow(k3, -p)) / (std::pow(k1, -p) - std::pow(k2, -p));
  };
  // ratio(p) decreases from ln(k3/k2)/ln(k2/k1) at p -> 0 to 0 at p -> inf.
  double lo = 0.25, hi = 60.0;
  if (ratio(lo) < target || ratio(hi) > target) return last;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) > target ? lo : hi) = mid;
  }
  const double p = 0.5 * (lo + hi);
  const double amp = d2 / (std::pow(k3, -p) - std::pow(k2, -p));
  return s3 - amp * std::pow(k3, -p);
}

ConvergenceReport converge_entropy_at(double x, double lambda, std::span<const int> K_schedule,
                                      double tol) {
  if (K_schedule.empty()) throw DomainError("converge_entropy: empty K schedule");
  if (!std::is_sorted(K_schedule.begin(), K_schedule.end()) ||
      std::adjacent_find(K_schedule.begin(), K_schedule.end()) != K_schedule.end()) {
    throw DomainError("converge_entropy: K schedule must be strictly increasing");
  }
  ConvergenceReport report;
  report.tolerance = tol;
  report.x = x;
  for (int K : K_schedule) {
    report.entropies.emplace_back(K, entanglement_at(x, lambda, truncation_for(K, lambda)).spatial_entropy);
  }
  const std::size_t n = report.entropies.size();
  report.converged =
      n >= 2 && std::abs(report.entropies[n - 1].second - report.entropies[n - 2].second) < tol;
  report.extrapolated = extrapolate_power_law(report.entropies);
  return report;
}

ConvergenceReport converge_entropy(int branch_index, const TrapParams& p,
                                   std::span<const int> K_schedule, double tol,
                                   const SolveOptions& opt) {
  const BranchPoint pt = solve_branch_point(branch_index, p, opt);
  return converge_entropy_at(pt.x, p.lambda, K_schedule, tol);
}

}  // namespace trapent
