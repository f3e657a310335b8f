#include "trapent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace trapent::oracle {

namespace {

long double log_gamma_large(long double w) {
  // Stirling series with B_2 .. B_16.
  static constexpr long double kB[] = {1.0L / 6,    -1.0L / 30,  1.0L / 42,      -1.0L / 30,
                                       5.0L / 66,   -691.0L / 2730, 7.0L / 6,    -3617.0L / 510};
  long double s = (w - 0.5L) * std::log(w) - w + 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  long double wp = w;
  for (int n = 1; n <= 8; ++n) {
    s += kB[n - 1] / (2.0L * n * (2.0L * n - 1.0L) * wp);
    wp *= w * w;
  }
  return s;
}

}  // namespace

double gamma_stirling(double z) {
  if (z <= 0.0 && z == std::floor(z)) throw std::domain_error("gamma_stirling: pole");
  const long double pi = std::numbers::pi_v<long double>;
  if (z < 0.5) {
    return static_cast<double>(pi / (std::sin(pi * static_cast<long double>(z)) *
                                     static_cast<long double>(gamma_stirling(1.0 - z))));
  }
  long double w = z;
  long double prod = 1.0L;
  while (w < 30.0L) {
    prod *= w;
    w += 1.0L;
  }
  return static_cast<double>(std::exp(log_gamma_large(w)) / prod);
}

double F_spherical(double x) {
  const double denom_arg = -x - 0.5;
  if (denom_arg <= 0.0 && denom_arg == std::floor(denom_arg)) return 0.0;
  return -2.0 * std::sqrt(std::numbers::pi) * gamma_stirling(-x) / gamma_stirling(denom_arg);
}

double spherical_root(double inv_as, double lo, double hi) {
  auto f = [&](double x) {
    return -std::numbers::sqrt2 * inv_as + F_spherical(x) / std::sqrt(std::numbers::pi);
  };
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> hermite_polynomials(double x, int nmax) {
  std::vector<double> h(nmax + 1, 0.0);
  h[0] = std::pow(std::numbers::pi, -0.25);
  if (nmax >= 1) h[1] = std::numbers::sqrt2 * x * h[0];
  for (int n = 1; n < nmax; ++n) {
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * x * h[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1];
  }
  return h;
}

GaussHermiteRule gauss_hermite(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(0.5 * i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussHermiteRule rule;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(es.eigenvalues()(i));
    const double v0 = es.eigenvectors()(0, i);
    rule.weights.push_back(std::sqrt(std::numbers::pi) * v0 * v0);
  }
  return rule;
}

double beamsplitter_overlap(int a, int b, int k) {
  static const GaussHermiteRule rule = gauss_hermite(48);
  const int nmax = std::max({a, b, k});
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x1 = rule.nodes[i];
    const auto h1 = hermite_polynomials(x1, nmax);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double x2 = rule.nodes[j];
      const auto h2 = hermite_polynomials(x2, nmax);
      const auto hR = hermite_polynomials((x1 + x2) / std::numbers::sqrt2, 0);
      const auto hr = hermite_polynomials((x1 - x2) / std::numbers::sqrt2, nmax);
      sum += rule.weights[i] * rule.weights[j] * h1[a] * h2[b] * hR[0] * hr[k];
    }
  }
  return sum;
}

std::vector<double> dense_schmidt_weights(const AmplitudeMatrix& amp) {
  const auto cap = amp.caps().per_direction();
  std::vector<ModeTriple> basis;
  for (int mx = 0; mx <= cap[0]; ++mx) {
    for (int my = 0; my <= cap[1]; ++my) {
      for (int mz = 0; mz <= cap[2]; ++mz) basis.push_back({mx, my, mz});
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) dense(i, j) = amp.at(basis[i], basis[j]);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  std::vector<double> w;
  for (double s : svd.singularValues()) w.push_back(s * s);
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

std::array<double, 3> toy_ground_state_3x3(const toy::ToyParams& p) {
  Eigen::Matrix3d H;
  H << p.delta, p.g, p.g,
       p.g, p.omega, 0.0,
       p.g, 0.0, p.omega;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(H);
  Eigen::Vector3d v = es.eigenvectors().col(0);
  if (v(0) < 0.0) v = -v;
  return {v(0), v(1), v(2)};
}

double toy_entropy_bruteforce(const std::array<double, 3>& c) {
  // Coefficient matrix C(i, j) of |i>_1 |j>_2.
  Eigen::Matrix2d C;
  C << c[0], c[2],
       c[1], 0.0;
  const Eigen::Matrix2d rho1 = C * C.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(rho1);
  double s = 0.0;
  for (double w : es.eigenvalues()) {
    if (w > 1e-16) s -= w * std::log(w);
  }
  return s;
}

}  // namespace trapent::oracle
