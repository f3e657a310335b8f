#include "trapent/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace trapent::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<long long> parse_integer(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<Ratio> parse_ratio(std::string_view s) {
  s = trim(s);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    auto n = parse_integer(s.substr(0, slash));
    auto d = parse_integer(s.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    if (*d < 0) {
      *n = -*n;
      *d = -*d;
    }
    const long long g = std::gcd(*n, *d);
    return Ratio{*n / g, *d / g};
  }
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    auto n = parse_integer(s);
    if (!n) return std::nullopt;
    return Ratio{*n, 1};
  }
  const std::string_view frac = s.substr(dot + 1);
  if (frac.empty() || frac.size() > 15 ||
      !std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  const std::string_view whole = s.substr(0, dot);
  const bool negative = !whole.empty() && whole.front() == '-';
  long long w = 0;
  if (!whole.empty() && whole != "-" && whole != "+") {
    auto wv = parse_integer(whole);
    if (!wv) return std::nullopt;
    w = *wv;
  }
  long long den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  auto f = parse_integer(frac);
  if (!f) return std::nullopt;
  long long num = std::llabs(w) * den + *f;
  if (negative) num = -num;
  const long long g = std::gcd(num, den);
  return Ratio{num / g, den / g};
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s.find('/') != std::string_view::npos) {
    if (auto r = parse_ratio(s)) return r->value();
    return std::nullopt;
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::vector<int>> parse_int_list(std::string_view s) {
  s = trim(s);
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) s.remove_prefix(1);
  if (!s.empty() && (s.back() == '}' || s.back() == ']')) s.remove_suffix(1);
  std::vector<int> out;
  while (true) {
    const auto comma = s.find(',');
    auto v = parse_integer(s.substr(0, comma));
    if (!v) return std::nullopt;
    out.push_back(static_cast<int>(*v));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

// Raw settings plus the line each key came from.
struct Draft {
  std::optional<Mode> mode;
  std::optional<Ratio> lambda;
  std::optional<double> r0_ratio, lo, hi, step, tol;
  std::optional<std::vector<int>> branches, K_schedule;
  std::optional<std::string> output;
  std::optional<Format> format;
  std::map<std::string, int> lines;
};

void set_key(Draft& d, const std::string& key, std::string_view value, int line) {
  auto bad = [&](const std::string& what) {
    throw ConfigError(line, key, "invalid value '" + std::string(value) + "' for " + key + ": " + what);
  };
  auto real = [&]() {
    auto v = parse_real(value);
    if (!v) bad("expected a real number");
    return *v;
  };
  if (d.lines.count(key) && line != 0) throw ConfigError(line, key, "duplicate key '" + key + "'");
  if (key == "mode") {
    const auto v = trim(value);
    if (v == "spectrum") d.mode = Mode::Spectrum;
    else if (v == "entanglement") d.mode = Mode::Entanglement;
    else if (v == "toy") d.mode = Mode::Toy;
    else if (v == "validate") d.mode = Mode::Validate;
    else bad("expected spectrum, entanglement, toy or validate");
  } else if (key == "lambda") {
    auto r = parse_ratio(value);
    if (!r) bad("expected an integer, decimal or p/q literal");
    d.lambda = *r;
  } else if (key == "r0_ratio") {
    d.r0_ratio = real();
  } else if (key == "lo") {
    d.lo = real();
  } else if (key == "hi") {
    d.hi = real();
  } else if (key == "step") {
    d.step = real();
  } else if (key == "tol") {
    d.tol = real();
  } else if (key == "branches") {
    auto v = parse_int_list(value);
    if (!v) bad("expected a comma-separated list of integers");
    d.branches = *v;
  } else if (key == "K_schedule") {
    auto v = parse_int_list(value);
    if (!v) bad("expected a comma-separated list of even integers");
    d.K_schedule = *v;
  } else if (key == "output") {
    d.output = std::string(trim(value));
  } else if (key == "format") {
    const auto v = trim(value);
    if (v == "csv") d.format = Format::Csv;
    else if (v == "json") d.format = Format::Json;
    else bad("expected csv or json");
  } else {
    throw ConfigError(line, key, "unknown key '" + key + "'");
  }
  d.lines[key] = line;
}

RunConfig resolve(const Draft& d) {
  auto fail = [&](const std::string& key, const std::string& msg) {
    const auto it = d.lines.find(key);
    throw ConfigError(it == d.lines.end() ? 0 : it->second, key, msg);
  };
  RunConfig cfg;
  cfg.mode = d.mode.value_or(Mode::Spectrum);
  if (cfg.mode == Mode::Toy) cfg.range = {0.0, 20.0, 0.4};
  if (cfg.mode == Mode::Entanglement) cfg.branches = {1, 2};
  if (d.lambda) cfg.lambda = *d.lambda;
  if (d.r0_ratio) cfg.r0_ratio = *d.r0_ratio;
  if (d.lo) cfg.range.lo = *d.lo;
  if (d.hi) cfg.range.hi = *d.hi;
  if (d.step) cfg.range.step = *d.step;
  if (d.tol) cfg.tol = *d.tol;
  if (d.branches) cfg.branches = *d.branches;
  if (d.K_schedule) cfg.K_schedule = *d.K_schedule;
  if (d.output) cfg.output_path = *d.output;
  if (d.format) cfg.format = *d.format;

  if (!(cfg.lambda.value() > 0.0)) fail("lambda", "lambda must be positive");
  if (!(cfg.r0_ratio >= 0.0)) fail("r0_ratio", "r0_ratio must be non-negative");
  if (!(cfg.range.step > 0.0)) fail("step", "step must be positive");
  if (!(cfg.range.lo < cfg.range.hi)) fail(d.lo ? "lo" : "hi", "lo must be below hi");
  if (!(cfg.tol > 0.0)) fail("tol", "tol must be positive");
  if (cfg.branches.empty()) fail("branches", "at least one branch is required");
  for (int b : cfg.branches) {
    if (b < 0) fail("branches", "branch indices must be non-negative");
  }
  if (cfg.K_schedule.empty()) fail("K_schedule", "K_schedule must not be empty");
  for (std::size_t i = 0; i < cfg.K_schedule.size(); ++i) {
    const int K = cfg.K_schedule[i];
    if (K < 0 || K % 2 != 0) fail("K_schedule", "K values must be non-negative and even");
    if (i > 0 && K <= cfg.K_schedule[i - 1]) fail("K_schedule", "K_schedule must be strictly increasing");
  }
  return cfg;
}

}  // namespace

std::string Ratio::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : "command line: " + message),
      line_(line),
      key_(std::move(key)) {}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  Draft d;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "", "expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
    set_key(d, key, line.substr(eq + 1), line_no);
  }
  for (const auto& [key, value] : overrides) set_key(d, key, value, 0);
  return resolve(d);
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Spectrum: return "spectrum";
    case Mode::Entanglement: return "entanglement";
    case Mode::Toy: return "toy";
    case Mode::Validate: return "validate";
  }
  return "?";
}

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
  return {
      {"mode", std::string(to_string(cfg.mode))},
      {"lambda", cfg.lambda.str()},
      {"r0_ratio", format_real(cfg.r0_ratio)},
      {"lo", format_real(cfg.range.lo)},
      {"hi", format_real(cfg.range.hi)},
      {"step", format_real(cfg.range.step)},
      {"branches", join(cfg.branches)},
      {"K_schedule", join(cfg.K_schedule)},
      {"tol", format_real(cfg.tol)},
      {"output", cfg.output_path.empty() ? "-" : cfg.output_path},
      {"format", std::string(to_string(cfg.format))},
  };
}

std::vector<double> sweep_grid(const SweepRange& r) {
  const auto n = static_cast<long long>(std::floor((r.hi - r.lo) / r.step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) {
    double v = r.lo + static_cast<double>(i) * r.step;
    if (std::abs(v) < 1e-9 * r.step) v = 0.0;
    grid.push_back(std::min(v, r.hi));
  }
  return grid;
}

}  // namespace trapent::cli
