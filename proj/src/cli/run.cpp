#include "trapent/run.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <sstream>
#include <tuple>
#include <variant>
#include <vector>

#include <json.hpp>

#include "trapent/entangle.hpp"
#include "trapent/errors.hpp"
#include "trapent/spectrum.hpp"
#include "trapent/toymodel.hpp"

namespace trapent::cli {

namespace {

using Cell = std::variant<double, int, bool>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::stod(format_real(v)); }

std::vector<double> grid_of(const RunConfig& cfg) { return sweep_grid(cfg.range); }

Table spectrum_table(const RunConfig& cfg) {
  const TrapParams base{cfg.lambda.value(), 0.0, cfg.r0_ratio};
  const std::vector<double> grid = grid_of(cfg);
  Table t{{"inv_as", "branch", "x", "beta2"}, {}};
  for (int b : cfg.branches) {
    const Branch br = trace_branch(b, grid, base);
    for (const BranchPoint& pt : br.points) t.rows.push_back({pt.inv_as, b, pt.x, pt.beta2});
  }
  return t;
}

Table entanglement_table(const RunConfig& cfg) {
  const double lambda = cfg.lambda.value();
  const TrapParams base{lambda, 0.0, cfg.r0_ratio};
  const std::vector<double> grid = grid_of(cfg);
  Table t{{"inv_as", "branch", "K", "spatial_entropy", "total_entropy", "converged"}, {}};
  for (int b : cfg.branches) {
    const Branch br = trace_branch(b, grid, base);
    for (const BranchPoint& pt : br.points) {
      ConvergenceReport rep;
      try {
        rep = converge_entropy_at(pt.x, lambda, cfg.K_schedule, cfg.tol);
      } catch (const Error& e) {
        std::ostringstream msg;
        msg << "branch " << b << " at inv_as = " << pt.inv_as << ": " << e.what();
        throw Error(msg.str());
      }
      for (std::size_t i = 0; i < rep.entropies.size(); ++i) {
        const auto [K, s] = rep.entropies[i];
        const bool conv = i > 0 && std::abs(s - rep.entropies[i - 1].second) < cfg.tol;
        t.rows.push_back({pt.inv_as, b, K, s, total_entropy(s), conv});
      }
    }
  }
  return t;
}

Table toy_table(const RunConfig& cfg) {
  Table t{{"g_over_gap", "entropy"}, {}};
  for (double r : grid_of(cfg)) t.rows.push_back({r, toy::toy_entropy_at(r)});
  return t;
}

// Rows are ordered by (branch, inv_as, K) or by the sweep value; make that
// explicit so the file never depends on evaluation order.
void sort_rows(Table& t, Mode mode) {
  auto num = [](const Cell& c) -> double {
    if (auto d = std::get_if<double>(&c)) return *d;
    if (auto i = std::get_if<int>(&c)) return *i;
    return std::get<bool>(c) ? 1.0 : 0.0;
  };
  std::stable_sort(t.rows.begin(), t.rows.end(), [&](const Row& a, const Row& b) {
    if (mode == Mode::Toy) return num(a[0]) < num(b[0]);
    const double ka = mode == Mode::Entanglement ? num(a[2]) : 0.0;
    const double kb = mode == Mode::Entanglement ? num(b[2]) : 0.0;
    return std::tuple(num(a[1]), num(a[0]), ka) < std::tuple(num(b[1]), num(b[0]), kb);
  });
}

void write_csv(const RunConfig& cfg, const Table& t, std::ostream& out) {
  out << "# trapent " << TRAPENT_VERSION << "\n";
  for (const auto& [k, v] : describe(cfg)) out << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const Row& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ",";
      std::visit(
          [&](auto v) {
            using V = decltype(v);
            if constexpr (std::is_same_v<V, double>) out << format_real(v);
            else if constexpr (std::is_same_v<V, bool>) out << (v ? 1 : 0);
            else out << v;
          },
          r[i]);
    }
    out << "\n";
  }
}

void write_json(const RunConfig& cfg, const Table& t, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["header"]["artifact"] = "trapent";
  doc["header"]["version"] = TRAPENT_VERSION;
  for (const auto& [k, v] : describe(cfg)) doc["header"]["config"][k] = v;
  doc["columns"] = t.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const Row& r : t.rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const Cell& c : r) {
      std::visit(
          [&](auto v) {
            if constexpr (std::is_same_v<decltype(v), double>) row.push_back(round12(v));
            else row.push_back(v);
          },
          c);
    }
    doc["rows"].push_back(std::move(row));
  }
  out << doc.dump(2) << "\n";
}

}  // namespace

void write_dataset(const RunConfig& cfg, std::ostream& out) {
  Table t;
  switch (cfg.mode) {
    case Mode::Spectrum: t = spectrum_table(cfg); break;
    case Mode::Entanglement: t = entanglement_table(cfg); break;
    case Mode::Toy: t = toy_table(cfg); break;
    case Mode::Validate: throw Error("write_dataset: validate mode produces no dataset");
  }
  sort_rows(t, cfg.mode);
  if (cfg.format == Format::Csv) write_csv(cfg, t, out);
  else write_json(cfg, t, out);
}

int run(const RunConfig& cfg, std::ostream& diag, const Validator& validator) {
  if (auto w = broad_resonance_warning({cfg.lambda.value(), 0.0, cfg.r0_ratio});
      w && cfg.mode != Mode::Toy && cfg.mode != Mode::Validate) {
    diag << "warning: " << *w << "\n";
  }
  auto emit = [&](const std::string& text) {
    if (cfg.output_path.empty()) {
      std::cout << text << std::flush;
      return static_cast<bool>(std::cout);
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    file << text;
    return static_cast<bool>(file);
  };

  if (cfg.mode == Mode::Validate) {
    if (!validator) {
      diag << "error: validate mode is not available in this build\n";
      return kExitConfigError;
    }
    if (cfg.output_path.empty()) return validator(std::cout) ? kExitOk : kExitValidationFailure;
    std::ostringstream report;
    const bool ok = validator(report);
    if (!emit(report.str())) {
      diag << "error: cannot write '" << cfg.output_path << "'\n";
      return kExitConfigError;
    }
    return ok ? kExitOk : kExitValidationFailure;
  }
  // Render into memory first so a numeric failure never leaves a partial file.
  std::ostringstream buffer;
  try {
    write_dataset(cfg, buffer);
  } catch (const Error& e) {
    diag << "numeric failure: " << e.what() << "\n";
    return kExitNumericFailure;
  }
  if (!emit(buffer.str())) {
    diag << "error: cannot write '" << cfg.output_path << "'\n";
    return kExitConfigError;
  }
  return kExitOk;
}

}  // namespace trapent::cli
