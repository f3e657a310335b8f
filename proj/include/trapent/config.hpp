#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trapent::cli {

enum class Mode { Spectrum, Entanglement, Toy, Validate };
enum class Format { Csv, Json };

// Exact rational literal ("5/6", "20", "0.04" -> 4/100).
struct Ratio {
  long long num = 1;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

struct SweepRange {
  double lo = -10.0;
  double hi = 10.0;
  double step = 0.1;
};

// A fully resolved run: defaults applied, invariants checked.
struct RunConfig {
  Mode mode = Mode::Spectrum;
  Ratio lambda{1, 1};
  double r0_ratio = 0.04;
  // inv_as for spectrum/entanglement, g/(omega - delta) for toy.
  SweepRange range;
  std::vector<int> branches{0, 1, 2};
  std::vector<int> K_schedule{8, 12, 16, 20};
  double tol = 1e-3;
  std::string output_path;  // empty: standard output
  Format format = Format::Csv;
};

// Error with the source line (0 for command-line overrides) and offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& message);
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Line-oriented `key = value` text; `#` starts a comment. Unknown and
// duplicated keys are errors. Overrides (e.g. from command-line flags) are
// applied after the text, then defaults are resolved and invariants checked.
//
// Keys: mode, lambda, r0_ratio, lo, hi, step, branches, K_schedule, tol,
// output, format. Mode-dependent defaults: toy sweeps [0, 20] step 0.4;
// entanglement defaults to branches {1, 2}.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

std::string_view to_string(Mode m);
std::string_view to_string(Format f);

// `key = value` lines describing a resolved config, in canonical key order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

// Inclusive grid lo, lo + step, ..., <= hi.
std::vector<double> sweep_grid(const SweepRange& r);

}  // namespace trapent::cli
