#include "trapent/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "trapent/config.hpp"
#include "trapent/entangle.hpp"
#include "trapent/errors.hpp"
#include "trapent/oracles.hpp"
#include "trapent/run.hpp"
#include "trapent/specfun.hpp"
#include "trapent/spectrum.hpp"
#include "trapent/toymodel.hpp"

namespace trapent::validation {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kR0 = 0.04;
constexpr double kLimitInvAs = 40.0;

const double kLn2Sqrt2 = std::log(2.0 * std::numbers::sqrt2);
const double kLn4 = std::log(4.0);
const double kLn2Sqrt6 = std::log(2.0 * std::sqrt(6.0));
const double kLambda1Branch2 =
    55.0 * std::numbers::ln2 / 24.0 + 7.0 * std::log(3.0) / 8.0 - std::log(5.0) / 24.0;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_err(double value, double target) { return std::abs(value - target) / std::abs(target); }

std::vector<double> grid(double lo, double hi, double step) {
  return cli::sweep_grid({lo, hi, step});
}

// K ramps at inv_as = +40, shared by the limit and ordering checks.
const ConvergenceReport& saturation(double lambda, int branch) {
  static std::map<std::pair<double, int>, ConvergenceReport> cache;
  const auto key = std::make_pair(lambda, branch);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  // The cigar trap carries up to 60 axial quanta per K; its saturated states
  // live in the lowest axial modes, so a shorter transverse ramp suffices.
  const std::vector<int> schedule =
      lambda < 0.5 ? std::vector<int>{4, 6, 8} : std::vector<int>{8, 12, 16, 20};
  return cache[key] = converge_entropy(branch, {lambda, kLimitInvAs, kR0}, schedule, 1e-3);
}

CheckResult timed(int id, std::string name, const std::function<bool(std::string&)>& body) {
  CheckResult r{id, std::move(name), false, {}, 0.0};
  const auto t0 = Clock::now();
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace

CheckResult check_special_functions() {
  const auto t0 = Clock::now();
  return timed(1, "special-function oracle", [&](std::string& d) {
    const double f11 = eval_F({1.0, 1.0});
    const double f21 = eval_F({2.0, 1.0});
    bool ok = std::abs(f11 + 2.0) <= 1e-8 && std::abs(f21 + 4.0) <= 1e-8;

    // 200 points in (-2, 3) at least 0.05 away from the poles x = 0, 1, 2.
    double worst = 0.0;
    int n = 0;
    for (int i = 0; n < 200; ++i) {
      const double x = -2.0 + 5.0 * (i + 0.5) / 230.0;
      if (x >= 3.0) break;
      const double dist = std::abs(x - std::round(x));
      if (x > -0.05 && dist < 0.05) continue;
      const double ref = oracle::F_spherical(x);
      worst = std::max(worst, std::abs(eval_F({-x, 1.0}) - ref) / std::abs(ref));
      ++n;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    ok = ok && n == 200 && worst <= 1e-6 && secs < 5.0;
    d = fmt("F(1,1)=%.12f F(2,1)=%.12f; %d grid points, max rel dev %.2e; %.2f s", f11, f21, n,
            worst, secs);
    return ok;
  });
}

CheckResult check_unitarity_roots() {
  return timed(2, "spherical unitarity roots", [](std::string& d) {
    const TrapParams p{1.0, 0.0, 0.0};
    const double x0 = solve_branch_point(0, p).x;
    const double x1 = solve_branch_point(1, p).x;
    d = fmt("branch 0 x=%.12f, branch 1 x=%.12f", x0, x1);
    return std::abs(x0 + 0.5) <= 1e-6 && std::abs(x1 - 0.5) <= 1e-6;
  });
}

CheckResult check_spectrum_monotonicity() {
  const auto t0 = Clock::now();
  return timed(3, "spectrum monotonicity", [&](std::string& d) {
    const auto g = grid(-10.0, 10.0, 0.1);
    int traced = 0;
    bool ok = true;
    for (double lambda : {5.0 / 6.0, 1.0, 7.0 / 6.0, 1.0 / 20.0, 20.0}) {
      for (double r0 : {0.0, kR0}) {
        for (int b : {0, 1, 2}) {
          const Branch br = trace_branch(b, g, {lambda, 0.0, r0});
          ++traced;
          for (std::size_t i = 1; i < br.points.size(); ++i) {
            if (!(br.points[i].x > br.points[i - 1].x)) {
              ok = false;
              d += fmt("not increasing: lambda=%g r0=%g branch %d at inv_as=%g; ", lambda, r0, b,
                       br.points[i].inv_as);
              break;
            }
          }
        }
      }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    d += fmt("%d branches x %zu points; %.1f s", traced, g.size(), secs);
    return ok && secs < 60.0;
  });
}

CheckResult check_molecular_fraction() {
  return timed(4, "molecular fraction bound", [](std::string& d) {
    const auto g = grid(-10.0, 10.0, 0.1);
    double worst[3] = {0.0, 0.0, 0.0};
    for (int b : {1, 2}) {
      const Branch br = trace_branch(b, g, {5.0 / 6.0, 0.0, kR0});
      for (const auto& pt : br.points) worst[b] = std::max(worst[b], pt.beta2);
    }
    d = fmt("max beta2: branch 1 %.5f, branch 2 %.5f (bound 0.01)", worst[1], worst[2]);
    return worst[1] < 0.01 && worst[2] < 0.01;
  });
}

CheckResult check_branch1_limits() {
  return timed(5, "branch-1 entanglement limits", [](std::string& d) {
    bool ok = true;
    const std::pair<double, double> cases[] = {
        {5.0 / 6.0, kLn2Sqrt2}, {7.0 / 6.0, kLn4}, {1.0, kLn2Sqrt6}};
    for (const auto& [lambda, target] : cases) {
      const ConvergenceReport& rep = saturation(lambda, 1);
      const double s = rep.entropies.back().second;
      const double e = rel_err(s, target);
      ok = ok && rep.converged && e <= 0.02;
      d += fmt("lambda=%.4f S=%.5f target %.5f (%.2f%%, %s); ", lambda, s, target, 100 * e,
               rep.converged ? "converged" : "NOT converged");
    }
    return ok;
  });
}

CheckResult check_branch2_limits() {
  return timed(6, "branch-2 entanglement limits", [](std::string& d) {
    const ConvergenceReport& r76 = saturation(7.0 / 6.0, 2);
    const double s76 = r76.entropies.back().second;
    const double e76 = rel_err(s76, kLn2Sqrt2);
    const ConvergenceReport& r1 = saturation(1.0, 2);
    const double e1 = rel_err(r1.extrapolated, kLambda1Branch2);
    d = fmt("lambda=7/6 S=%.5f target %.5f (%.2f%%, %s); lambda=1 S_extrap=%.5f (last %.5f) "
            "target %.5f (%.2f%%)",
            s76, kLn2Sqrt2, 100 * e76, r76.converged ? "converged" : "NOT converged",
            r1.extrapolated, r1.entropies.back().second, kLambda1Branch2, 100 * e1);
    return r76.converged && e76 <= 0.02 && e1 <= 0.03;
  });
}

CheckResult check_curve_shape() {
  return timed(7, "entropy curve shape", [](std::string& d) {
    const double lambda = 5.0 / 6.0;
    const Branch br = trace_branch(1, grid(-10.0, 40.0, 0.5), {lambda, 0.0, kR0});
    const TruncationCaps caps = truncation_for(12, lambda);
    std::vector<double> s;
    for (const auto& pt : br.points) s.push_back(entanglement_at(pt.x, lambda, caps).spatial_entropy);
    const auto peak = std::max_element(s.begin() + 1, s.end() - 1);
    const double peak_at = br.points[static_cast<std::size_t>(peak - s.begin())].inv_as;
    d = fmt("S(-10)=%.4f, peak S=%.4f at inv_as=%.1f, S(40)=%.4f (K=12)", s.front(), *peak,
            peak_at, s.back());
    return *peak > s.front() && *peak > s.back();
  });
}

CheckResult check_geometry_ordering() {
  return timed(8, "geometry ordering", [](std::string& d) {
    const double s1 = saturation(1.0, 1).entropies.back().second;
    const double s76 = saturation(7.0 / 6.0, 1).entropies.back().second;
    const double s56 = saturation(5.0 / 6.0, 1).entropies.back().second;
    bool ok = s1 > s76 && s76 > s56;
    d = fmt("branch 1: lambda=1 %.4f > 7/6 %.4f > 5/6 %.4f; ", s1, s76, s56);
    for (int b : {1, 2}) {
      const double cigar = saturation(1.0 / 20.0, b).entropies.back().second;
      const double pancake = saturation(20.0, b).entropies.back().second;
      ok = ok && cigar < pancake;
      d += fmt("branch %d: lambda=1/20 %.4f < lambda=20 %.4f; ", b, cigar, pancake);
    }
    return ok;
  });
}

CheckResult check_toy_model() {
  return timed(9, "toy model", [](std::string& d) {
    const double s0 = toy::toy_entropy_at(0.0);
    const double sat = toy::toy_entropy_at(1e4);
    const double target = toy::toy_saturation_entropy();
    bool monotone = true;
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
      const double s = toy::toy_entropy_at(20.0 * i / 49.0);
      if (!(s > prev)) monotone = false;
      prev = s;
    }
    d = fmt("S(0)=%g, S(1e4)=%.6f target %.6f, monotone on 50 points: %s", s0, sat, target,
            monotone ? "yes" : "no");
    return s0 == 0.0 && std::abs(sat - target) <= 1e-3 && monotone;
  });
}

CheckResult check_oracle_equivalence() {
  return timed(10, "oracle equivalence", [](std::string& d) {
    std::mt19937_64 rng(20061014);
    std::uniform_real_distribution<double> lam(0.5, 2.0), inv(-10.0, 10.0);
    std::uniform_int_distribution<int> branch(0, 2), kpick(2, 4);
    double worst_w = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double lambda = lam(rng);
      const TrapParams p{lambda, inv(rng), trial % 2 ? kR0 : 0.0};
      const int b = branch(rng);
      const int K = 2 * kpick(rng);
      const BranchPoint pt = solve_branch_point(b, p);
      const AmplitudeMatrix amp = assemble_amplitude(relative_expansion(pt.x, lambda, truncation_for(K, lambda)));
      const SchmidtSpectrum blocked = schmidt(amp);
      const std::vector<double> dense = oracle::dense_schmidt_weights(amp);
      if (dense.size() != blocked.kappa2.size()) {
        d = "weight count mismatch";
        return false;
      }
      for (std::size_t i = 0; i < dense.size(); ++i) {
        worst_w = std::max(worst_w, std::abs(dense[i] - blocked.kappa2[i]));
      }
    }
    double worst_t = 0.0;
    for (int k = 0; k <= 12; k += 2) {
      for (const auto& term : beamsplitter_coeffs(k)) {
        worst_t = std::max(worst_t, std::abs(term.value - oracle::beamsplitter_overlap(term.a, term.b, k)));
      }
    }
    d = fmt("20 branch points: max |blocked - dense| weight %.2e; beamsplitter k<=12 max dev %.2e",
            worst_w, worst_t);
    return worst_w <= 1e-9 && worst_t <= 1e-10;
  });
}

CheckResult check_determinism() {
  return timed(11, "determinism", [](std::string& d) {
    const char* configs[] = {
        "mode = spectrum\nlambda = 5/6\nlo = -2\nhi = 2\nstep = 0.5\n",
        "mode = spectrum\nlambda = 20\nr0_ratio = 0\nlo = -1\nhi = 1\nstep = 0.5\nformat = json\n",
        "mode = entanglement\nlambda = 7/6\nlo = -1\nhi = 1\nstep = 1\nK_schedule = 4, 6\n",
        "mode = toy\nlo = 0\nhi = 5\nstep = 0.25\n",
    };
    int identical = 0;
    for (const char* text : configs) {
      const cli::RunConfig cfg = cli::parse_config(text);
      std::ostringstream a, b;
      cli::write_dataset(cfg, a);
      cli::write_dataset(cfg, b);
      if (a.str() == b.str() && !a.str().empty()) ++identical;
    }
    d = fmt("%d of 4 configs byte-identical across repeated runs", identical);
    return identical == 4;
  });
}

std::vector<CheckResult> run_acceptance(std::ostream& out) {
  using Check = CheckResult (*)();
  const Check checks[] = {check_special_functions, check_unitarity_roots,
                          check_spectrum_monotonicity, check_molecular_fraction,
                          check_branch1_limits, check_branch2_limits,
                          check_curve_shape, check_geometry_ordering,
                          check_toy_model, check_oracle_equivalence,
                          check_determinism};
  std::vector<CheckResult> results;
  for (Check c : checks) {
    results.push_back(c());
    const CheckResult& r = results.back();
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": " << r.detail
        << fmt(" (%.2f s)", r.seconds) << std::endl;
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  out << passed << "/" << results.size() << " acceptance checks passed" << std::endl;
  return results;
}

bool validate_all(std::ostream& out) {
  const auto results = run_acceptance(out);
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace trapent::validation
