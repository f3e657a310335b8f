#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace trapent {

// Per-direction caps on oscillator indices (x and y share `perp`). Both caps
// are even and bound relative-motion and single-particle indices alike.
struct TruncationCaps {
  int perp = 8;
  int z = 8;

  std::array<int, 3> per_direction() const { return {perp, perp, z}; }
  bool operator==(const TruncationCaps&) const = default;
};

// Caps for schedule value K in a trap of aspect ratio lambda. Near-isotropic
// traps (1/2 <= lambda <= 2) use K in every direction. Cigar traps resolve the
// cheap axial quanta with K_z = min(60, K/lambda); pancake traps shrink K_z to
// max(2, K/lambda). K/lambda is rounded up to an even integer.
TruncationCaps truncation_for(int K, double lambda);

using ModeTriple = std::array<int, 3>;

// phi_k(0) of the unit-length 1D oscillator eigenfunction, k even.
double mode_amplitude_at_origin(int k);

// Relative-motion wavefunction over even oscillator modes (center of mass
// frozen in its ground state). Odd modes are absent since phi_odd(0) = 0.
class RelativeExpansion {
 public:
  // c_k proportional to prod_d phi_{k_d}(0) / (x - (k_x + k_y)/2 - lambda k_z/2).
  // Throws ResonantDenominatorError within 1e-9 of a retained level.
  static RelativeExpansion from_energy(double x, double lambda, TruncationCaps caps);

  // Explicit coefficients (normalized on construction); every k must be even
  // and within caps.
  static RelativeExpansion from_coefficients(
      TruncationCaps caps, const std::vector<std::pair<ModeTriple, double>>& coeffs,
      double lambda = 1.0, double x = 0.0);

  double lambda() const noexcept { return lambda_; }
  double x() const noexcept { return x_; }
  const TruncationCaps& caps() const noexcept { return caps_; }

  // Coefficient for mode k; zero if any component is odd or above its cap.
  double coeff(const ModeTriple& k) const;
  double norm2() const;
  std::size_t size() const noexcept { return coeffs_.size(); }

 private:
  RelativeExpansion(double lambda, double x, TruncationCaps caps);
  std::size_t index(const ModeTriple& k) const;
  void normalize();

  double lambda_;
  double x_;
  TruncationCaps caps_;
  std::array<int, 3> counts_;  // number of even modes per direction
  std::vector<double> coeffs_;
};

inline RelativeExpansion relative_expansion(double x, double lambda, TruncationCaps caps) {
  return RelativeExpansion::from_energy(x, lambda, caps);
}

// Which particle carries the (-1) of the relative coordinate r = (r1 - r2)/sqrt(2).
enum class SignConvention { SecondParticle, FirstParticle };

struct BeamsplitterTerm {
  int a;  // particle-1 quantum
  int b;  // particle-2 quantum, a + b = k
  double value;
};

// Expansion of |0>_cm |k>_rel over |a>_1 |b>_2 in one direction:
//   T^(k)_{a,b} = (-1)^b sqrt(binom(k, a)) 2^{-k/2}, ordered by decreasing a.
std::vector<BeamsplitterTerm> beamsplitter_coeffs(
    int k, SignConvention sign = SignConvention::SecondParticle);

// Single entry T^(a+b)_{a,b}; a + b must be even.
double beamsplitter_coeff(int a, int b, SignConvention sign = SignConvention::SecondParticle);

// Single-particle triples m with m_d of parity parity[d] and m_d <= cap_d,
// in lexicographic order, together with the symmetric amplitude block.
struct ParitySector {
  std::array<int, 3> parity{};
  std::vector<ModeTriple> states;
  Eigen::MatrixXd block;
};

// Two-atom amplitude eta_{m1,m2} in the particle product basis. Entries
// between different parity sectors vanish identically, so only the eight
// diagonal blocks are stored.
class AmplitudeMatrix {
 public:
  AmplitudeMatrix(TruncationCaps caps, std::array<ParitySector, 8> sectors);

  const TruncationCaps& caps() const noexcept { return caps_; }
  const std::array<ParitySector, 8>& sectors() const noexcept { return sectors_; }
  std::array<ParitySector, 8>& sectors() noexcept { return sectors_; }

  double at(const ModeTriple& m1, const ModeTriple& m2) const;
  double norm2() const;
  // Number of single-particle states, (perp + 1)^2 (z + 1).
  std::size_t dimension() const;

  static int sector_id(const ModeTriple& m) { return (m[0] & 1) << 2 | (m[1] & 1) << 1 | (m[2] & 1); }
  // Position of m inside its sector's state list.
  std::size_t local_index(const ModeTriple& m) const;

 private:
  TruncationCaps caps_;
  std::array<ParitySector, 8> sectors_;
};

// eta_{m1,m2} = c_{m1+m2} prod_d T^(m1_d + m2_d)_{m1_d, m2_d}. Only one relative
// mode feeds each entry because T^(k)_{a,b} requires a + b = k.
AmplitudeMatrix assemble_amplitude(const RelativeExpansion& rel,
                                   SignConvention sign = SignConvention::SecondParticle);

// Contracts eta back through the basis change: c_k = sum_{m1+m2=k} eta T.
std::vector<std::pair<ModeTriple, double>> contract_to_relative(
    const AmplitudeMatrix& amp, SignConvention sign = SignConvention::SecondParticle);

}  // namespace trapent
