#include "trapent/pairstate.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "trapent/errors.hpp"

namespace trapent {

namespace {

int even_ceil(double v) { return 2 * static_cast<int>(std::ceil(0.5 * v - 1e-9)); }

void require_even_cap(int cap, const char* what) {
  if (cap < 0 || cap % 2 != 0) {
    std::ostringstream msg;
    msg << what << " must be a non-negative even integer, got " << cap;
    throw DomainError(msg.str());
  }
}

// binom(2p, p) / 4^p
double central_binomial_weight(int p) {
  double c = 1.0;
  for (int j = 1; j <= p; ++j) c *= (2.0 * j - 1.0) / (2.0 * j);
  return c;
}

double binomial(int n, int k) {
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// One direction: T[a][b] for a + b <= cap, a + b even.
std::vector<std::vector<double>> beamsplitter_table(int cap, SignConvention sign) {
  std::vector<std::vector<double>> t(cap + 1, std::vector<double>(cap + 1, 0.0));
  for (int a = 0; a <= cap; ++a) {
    for (int b = a % 2; a + b <= cap; b += 2) t[a][b] = beamsplitter_coeff(a, b, sign);
  }
  return t;
}

int states_along(int cap, int parity) { return cap >= parity ? (cap - parity) / 2 + 1 : 0; }

}  // namespace

TruncationCaps truncation_for(int K, double lambda) {
  require_even_cap(K, "truncation K");
  if (!(lambda > 0.0)) throw DomainError("truncation_for: lambda must be positive");
  if (lambda < 0.5) return {K, std::min(60, even_ceil(K / lambda))};
  if (lambda > 2.0) return {K, std::max(2, even_ceil(K / lambda))};
  return {K, K};
}

double mode_amplitude_at_origin(int k) {
  if (k < 0 || k % 2 != 0) {
    std::ostringstream msg;
    msg << "mode_amplitude_at_origin: k must be even and non-negative, got " << k;
    throw DomainError(msg.str());
  }
  const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::pow(std::numbers::pi, -0.25) * std::sqrt(central_binomial_weight(k / 2));
}

RelativeExpansion::RelativeExpansion(double lambda, double x, TruncationCaps caps)
    : lambda_(lambda), x_(x), caps_(caps) {
  require_even_cap(caps.perp, "perpendicular cap");
  require_even_cap(caps.z, "axial cap");
  counts_ = {caps.perp / 2 + 1, caps.perp / 2 + 1, caps.z / 2 + 1};
  coeffs_.assign(static_cast<std::size_t>(counts_[0]) * counts_[1] * counts_[2], 0.0);
}

std::size_t RelativeExpansion::index(const ModeTriple& k) const {
  return (static_cast<std::size_t>(k[0] / 2) * counts_[1] + k[1] / 2) * counts_[2] + k[2] / 2;
}

void RelativeExpansion::normalize() {
  const double n2 = norm2();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NormalizationError("relative expansion has zero or non-finite norm");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (double& c : coeffs_) c *= inv;
}

RelativeExpansion RelativeExpansion::from_energy(double x, double lambda, TruncationCaps caps) {
  RelativeExpansion rel(lambda, x, caps);
  const auto cap = caps.per_direction();
  std::vector<double> phi(std::max(cap[0], cap[2]) + 1, 0.0);
  for (int k = 0; k < static_cast<int>(phi.size()); k += 2) phi[k] = mode_amplitude_at_origin(k);
  for (int kx = 0; kx <= cap[0]; kx += 2) {
    for (int ky = 0; ky <= cap[1]; ky += 2) {
      for (int kz = 0; kz <= cap[2]; kz += 2) {
        const double denom = x - 0.5 * (kx + ky) - 0.5 * lambda * kz;
        if (std::abs(denom) < 1e-9) {
          std::ostringstream msg;
          msg << "relative_expansion: x = " << x << " is resonant with mode (" << kx << ","
              << ky << "," << kz << ")";
          throw ResonantDenominatorError(msg.str());
        }
        rel.coeffs_[rel.index({kx, ky, kz})] = phi[kx] * phi[ky] * phi[kz] / denom;
      }
    }
  }
  rel.normalize();
  return rel;
}

RelativeExpansion RelativeExpansion::from_coefficients(
    TruncationCaps caps, const std::vector<std::pair<ModeTriple, double>>& coeffs, double lambda,
    double x) {
  RelativeExpansion rel(lambda, x, caps);
  const auto cap = caps.per_direction();
  for (const auto& [k, c] : coeffs) {
    for (int d = 0; d < 3; ++d) {
      if (k[d] < 0 || k[d] % 2 != 0 || k[d] > cap[d]) {
        throw DomainError("from_coefficients: mode indices must be even and within caps");
      }
    }
    rel.coeffs_[rel.index(k)] += c;
  }
  rel.normalize();
  return rel;
}

double RelativeExpansion::coeff(const ModeTriple& k) const {
  const auto cap = caps_.per_direction();
  for (int d = 0; d < 3; ++d) {
    if (k[d] < 0 || k[d] % 2 != 0 || k[d] > cap[d]) return 0.0;
  }
  return coeffs_[index(k)];
}

double RelativeExpansion::norm2() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

std::vector<BeamsplitterTerm> beamsplitter_coeffs(int k, SignConvention sign) {
  if (k < 0 || k % 2 != 0) {
    std::ostringstream msg;
    msg << "beamsplitter_coeffs: k must be even and non-negative, got " << k;
    throw DomainError(msg.str());
  }
  std::vector<BeamsplitterTerm> out;
  out.reserve(k + 1);
  for (int a = k; a >= 0; --a) out.push_back({a, k - a, beamsplitter_coeff(a, k - a, sign)});
  return out;
}

double beamsplitter_coeff(int a, int b, SignConvention sign) {
  if (a < 0 || b < 0 || (a + b) % 2 != 0) {
    throw DomainError("beamsplitter_coeff: need a, b >= 0 with a + b even");
  }
  const int k = a + b;
  const int carrier = sign == SignConvention::SecondParticle ? b : a;
  const double s = carrier % 2 == 0 ? 1.0 : -1.0;
  return s * std::sqrt(binomial(k, a)) * std::ldexp(1.0, -k / 2);
}

AmplitudeMatrix::AmplitudeMatrix(TruncationCaps caps, std::array<ParitySector, 8> sectors)
    : caps_(caps), sectors_(std::move(sectors)) {}

std::size_t AmplitudeMatrix::local_index(const ModeTriple& m) const {
  const auto cap = caps_.per_direction();
  std::array<int, 3> n{};
  for (int d = 0; d < 3; ++d) n[d] = states_along(cap[d], m[d] & 1);
  return (static_cast<std::size_t>(m[0] / 2) * n[1] + m[1] / 2) * n[2] + m[2] / 2;
}

double AmplitudeMatrix::at(const ModeTriple& m1, const ModeTriple& m2) const {
  const auto cap = caps_.per_direction();
  for (int d = 0; d < 3; ++d) {
    if (m1[d] < 0 || m2[d] < 0 || m1[d] > cap[d] || m2[d] > cap[d]) return 0.0;
  }
  const int s = sector_id(m1);
  if (s != sector_id(m2)) return 0.0;
  const auto& blk = sectors_[s].block;
  return blk(static_cast<Eigen::Index>(local_index(m1)), static_cast<Eigen::Index>(local_index(m2)));
}

double AmplitudeMatrix::norm2() const {
  double s = 0.0;
  for (const auto& sec : sectors_) s += sec.block.squaredNorm();
  return s;
}

std::size_t AmplitudeMatrix::dimension() const {
  const auto cap = caps_.per_direction();
  return static_cast<std::size_t>(cap[0] + 1) * (cap[1] + 1) * (cap[2] + 1);
}

AmplitudeMatrix assemble_amplitude(const RelativeExpansion& rel, SignConvention sign) {
  const TruncationCaps caps = rel.caps();
  const auto cap = caps.per_direction();
  const std::array<std::vector<std::vector<double>>, 3> table = {
      beamsplitter_table(cap[0], sign), beamsplitter_table(cap[1], sign),
      beamsplitter_table(cap[2], sign)};

  std::array<ParitySector, 8> sectors;
  for (int id = 0; id < 8; ++id) {
    ParitySector& sec = sectors[id];
    sec.parity = {(id >> 2) & 1, (id >> 1) & 1, id & 1};
    for (int mx = sec.parity[0]; mx <= cap[0]; mx += 2) {
      for (int my = sec.parity[1]; my <= cap[1]; my += 2) {
        for (int mz = sec.parity[2]; mz <= cap[2]; mz += 2) sec.states.push_back({mx, my, mz});
      }
    }
    const auto n = static_cast<Eigen::Index>(sec.states.size());
    sec.block = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const ModeTriple& m1 = sec.states[i];
      for (Eigen::Index j = i; j < n; ++j) {
        const ModeTriple& m2 = sec.states[j];
        const ModeTriple k = {m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]};
        if (k[0] > cap[0] || k[1] > cap[1] || k[2] > cap[2]) continue;
        const double v = rel.coeff(k) * table[0][m1[0]][m2[0]] * table[1][m1[1]][m2[1]] *
                         table[2][m1[2]][m2[2]];
        sec.block(i, j) = v;
        sec.block(j, i) = v;
      }
    }
  }
  return AmplitudeMatrix(caps, std::move(sectors));
}

std::vector<std::pair<ModeTriple, double>> contract_to_relative(const AmplitudeMatrix& amp,
                                                                SignConvention sign) {
  std::map<ModeTriple, double> acc;
  for (const auto& sec : amp.sectors()) {
    const auto n = static_cast<Eigen::Index>(sec.states.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double v = sec.block(i, j);
        if (v == 0.0) continue;
        const ModeTriple& m1 = sec.states[i];
        const ModeTriple& m2 = sec.states[j];
        double t = v;
        ModeTriple k{};
        for (int d = 0; d < 3; ++d) {
          t *= beamsplitter_coeff(m1[d], m2[d], sign);
          k[d] = m1[d] + m2[d];
        }
        acc[k] += t;
      }
    }
  }
  return {acc.begin(), acc.end()};
}

}  // namespace trapent
