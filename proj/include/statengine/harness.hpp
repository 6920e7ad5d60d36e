// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "statengine/analytics.hpp"
#include "statengine/cycles.hpp"

namespace statengine {

// ---------------------------------------------------------------------------
// Grids and sweep requests. All temperatures here are in T_F units and all
// energies in E_F units of the N-particle medium at point b.

struct Grid {
  double min = 0.05;
  double max = 10.0;
  int points = 200;
  bool log_spaced = true;
  /// Explicit values; when non-empty they replace min/max/points.
  std::vector<double> values;

  std::vector<double> expand() const {
    if (!values.empty()) return values;
    std::vector<double> out;
    if (points <= 0) return out;
    if (points == 1) return {min};
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      const double f = static_cast<double>(i) / (points - 1);
      out.push_back(log_spaced ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                               : min + f * (max - min));
    }
    out.front() = min;
    out.back() = max;
    return out;
  }

  void validate(const std::string& name, bool allow_zero = true) const {
    const auto check = [&](double v) {
      if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
        throw ConfigError(name + ": grid values must be finite and nonnegative");
      }
    };
    for (double v : values) check(v);
    if (values.empty() && points != 0) {
      check(min);
      check(max);
      if (points < 2 && min != max) throw ConfigError(name + ": resolution must be >= 2");
      if (max < min) throw ConfigError(name + ": max < min");
      if (log_spaced && min <= 0.0) throw ConfigError(name + ": log grid needs min > 0");
    }
  }
};

/// Cycle template in reduced units.
struct CycleTemplate {
  Variant variant = Variant::A;
  Order order = Order::BgTg;
  long N = 500;
  double ratio_squared = 0.5;
  double tc = 0.0;
  double th = 1.0;
  TrapKind trap = TrapKind::Box;

  CycleSpec at(double tc_reduced, double th_reduced) const {
    return reduced_cycle_spec(variant, order, N, ratio_squared, tc_reduced, th_reduced, trap);
  }
  CycleSpec spec() const { return at(tc, th); }
};

struct OptimizeSettings {
  double ratio_min = 0.2;  // r = L_a/L_b (box) or omega_b/omega_a (harmonic)
  double ratio_max = 10.0;
  int coarse_points = 64;
  double ratio_tolerance = 1e-6;
};

enum class SweepAxis { HotTemp, ColdTemp, RatioOptimize, ModeAtlas };
enum class OutputFormat { CSV, JSON };

struct SweepSpec {
  CycleTemplate cycle;
  SweepAxis axis = SweepAxis::HotTemp;
  Grid grid;       // T_h (HotTemp), T_c (ColdTemp), T_c/T_h (RatioOptimize), T_c (ModeAtlas)
  Grid grid2;      // T_h (ModeAtlas only)
  OptimizeSettings optimize;
  std::string output_path;
  OutputFormat format = OutputFormat::CSV;
};

// ---------------------------------------------------------------------------
// Worker pool.

/// Evaluates fn(0..count-1) on up to `threads` workers; results keep index
/// order regardless of scheduling.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<R> out(count);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tables.

using Cell = std::variant<std::monostate, double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Fixed 12-significant-digit rendering used by every writer.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& os, const Table& table, const ConfigEcho& config) {
  for (const auto& [k, v] : config) os << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_escape(table.columns[i]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(row[i]));
    os << '\n';
  }
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    // round-trip through the fixed decimal rendering so JSON and CSV agree
    return std::stod(format_number(*d));
  }
  if (const long* l = std::get_if<long>(&c)) return *l;
  return std::get<std::string>(c);
}

inline void write_json(std::ostream& os, const Table& table, const ConfigEcho& config) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

inline void write_table(std::ostream& os, const Table& table, const ConfigEcho& config, OutputFormat format) {
  if (format == OutputFormat::JSON) {
    write_json(os, table, config);
  } else {
    write_csv(os, table, config);
  }
}

// ---------------------------------------------------------------------------
// Cycle rows.

inline Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

inline std::vector<std::string> cycle_columns() {
  return {"variant", "order", "N", "trap", "ratio2", "T_c[T_F]", "T_h[T_F]", "W_out[E_F]", "Q_in[E_F]",
          "Q_out[E_F]", "eta", "gain", "sigma", "sigma_s", "mode", "eta_otto", "eta_carnot", "eta_ca", "error"};
}

inline std::vector<Cell> cycle_row(const CycleTemplate& c, double tc, double th, const CycleReport* r,
                                   const std::string& error) {
  std::vector<Cell> row{std::string(to_string(c.variant)), std::string(to_string(c.order)), c.N,
                        std::string(to_string(c.trap)), c.ratio_squared, tc, th};
  if (r) {
    const double u = r->energy_unit;
    row.insert(row.end(), {r->W_out / u, r->Q_in / u, r->Q_out / u, opt_cell(r->eta), opt_cell(r->gain),
                           opt_cell(r->sigma), opt_cell(r->sigma_s), std::string(to_string(r->mode))});
  } else {
    for (int i = 0; i < 8; ++i) row.emplace_back(std::monostate{});
  }
  if (th > 0.0) {
    const auto b = analytics::bounds(tc, th, c.ratio_squared);
    row.insert(row.end(), {b.otto, b.carnot, b.curzon_ahlborn});
  } else {
    row.insert(row.end(), {1.0 - c.ratio_squared, Cell(std::monostate{}), Cell(std::monostate{})});
  }
  row.emplace_back(error);
  return row;
}

struct PointResult {
  std::optional<CycleReport> report;
  std::string error;
};

inline PointResult evaluate_point(const CycleTemplate& c, double tc, double th) {
  try {
    return {run_cycle(c.at(tc, th)), {}};
  } catch (const NumericalError& e) {
    return {std::nullopt, e.what()};
  } catch (const DomainError& e) {
    return {std::nullopt, e.what()};
  }
}

// ---------------------------------------------------------------------------
// Compression-ratio optimisation.


struct OptimizationResult {
  double tc = 0.0;
  double th = 0.0;
  double best_ratio = 1.0;
  double w_max = 0.0;  // E_F units
  std::optional<double> eta_mw;
  std::optional<double> sigma;
  std::optional<double> sigma_s;
  bool on_boundary = false;
  bool engine = false;
};

/// (L_b/L_a)^2 for trap-volume ratio r (L_a/L_b, or omega_b/omega_a).
inline double ratio_squared_from_volume_ratio(TrapKind trap, double r) { return trap == TrapKind::Box ? 1.0 / (r * r) : 1.0 / r; }

/// Maximises W_out over the trap-volume ratio: coarse log-spaced scan, then
/// golden-section refinement around the best grid point.
inline OptimizationResult optimize_ratio(Variant variant, Order order, double tc, double th, long n,
                                         TrapKind trap = TrapKind::Box, const OptimizeSettings& opt = {}) {
  if (!(th > 0.0)) throw ConfigError("optimize_ratio needs T_h > 0");
  if (!(opt.ratio_min > 0.0) || !(opt.ratio_max > opt.ratio_min)) throw ConfigError("degenerate ratio search interval");
  if (opt.coarse_points < 3) throw ConfigError("ratio search needs at least 3 coarse points");

  auto run_at = [&](double r) {
    return run_cycle(reduced_cycle_spec(variant, order, n, ratio_squared_from_volume_ratio(trap, r), tc, th, trap),
                     /*with_gain=*/false);
  };
  auto work_at = [&](double log_r) {
    const CycleReport rep = run_at(std::exp(log_r));
    return rep.W_out / rep.energy_unit;
  };

  const double lo = std::log(opt.ratio_min), hi = std::log(opt.ratio_max);
  const int m = opt.coarse_points;
  std::vector<double> xs(static_cast<std::size_t>(m)), ws(static_cast<std::size_t>(m));
  int best = 0;
  for (int i = 0; i < m; ++i) {
    xs[i] = lo + (hi - lo) * i / (m - 1);
    ws[i] = work_at(xs[i]);
    if (ws[i] > ws[best]) best = i;
  }

  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, m - 1)];
  double x_best = xs[best], w_best = ws[best];
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double wc = work_at(c), wd = work_at(d);
  while (b - a > opt.ratio_tolerance) {
    if (wc > wd) {
      b = d;
      d = c;
      wd = wc;
      c = b - inv_phi * (b - a);
      wc = work_at(c);
    } else {
      a = c;
      c = d;
      wc = wd;
      d = a + inv_phi * (b - a);
      wd = work_at(d);
    }
  }
  for (auto [x, w] : {std::pair{c, wc}, std::pair{d, wd}}) {
    if (w > w_best) {
      w_best = w;
      x_best = x;
    }
  }

  OptimizationResult res;
  res.tc = tc;
  res.th = th;
  res.best_ratio = std::exp(x_best);
  const CycleReport rep = run_at(res.best_ratio);
  res.w_max = rep.W_out / rep.energy_unit;
  res.eta_mw = rep.eta;
  res.sigma = rep.sigma;
  res.sigma_s = rep.sigma_s;
  res.engine = res.w_max > 0.0;
  const double edge = 4.0 * opt.ratio_tolerance;
  res.on_boundary = x_best - lo <= edge || hi - x_best <= edge;
  return res;
}

// ---------------------------------------------------------------------------
// Mode atlas.

struct ModeAtlas {
  std::vector<double> tc;  // rows
  std::vector<double> th;  // columns
  std::vector<Mode> cells;
  std::vector<std::string> errors;  // per cell, empty when the cycle ran

  Mode at(std::size_t i, std::size_t j) const { return cells[i * th.size() + j]; }
  std::size_t count(Mode m) const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), m)); }
};

inline ModeAtlas mode_atlas(const CycleTemplate& c, const Grid& tc_grid, const Grid& th_grid, unsigned threads = 1) {
  tc_grid.validate("T_c grid");
  th_grid.validate("T_h grid");
  ModeAtlas atlas;
  atlas.tc = tc_grid.expand();
  atlas.th = th_grid.expand();
  const std::size_t nth = atlas.th.size();
  const auto results = parallel_map<PointResult>(atlas.tc.size() * nth, threads, [&](std::size_t k) {
    return evaluate_point(c, atlas.tc[k / nth], atlas.th[k % nth]);
  });
  atlas.cells.reserve(results.size());
  for (const auto& r : results) {
    atlas.cells.push_back(r.report ? r.report->mode : Mode::None);
    atlas.errors.push_back(r.error);
  }
  return atlas;
}

// ---------------------------------------------------------------------------
// Sweeps.

inline Table sweep(const SweepSpec& spec, unsigned threads = 1) {
  const CycleTemplate& c = spec.cycle;
  Table table;
  switch (spec.axis) {
    case SweepAxis::HotTemp:
    case SweepAxis::ColdTemp: {
      spec.grid.validate(spec.axis == SweepAxis::HotTemp ? "T_h grid" : "T_c grid");
      const auto values = spec.grid.expand();
      const bool hot = spec.axis == SweepAxis::HotTemp;
      const auto results = parallel_map<PointResult>(values.size(), threads, [&](std::size_t i) {
        return hot ? evaluate_point(c, c.tc, values[i]) : evaluate_point(c, values[i], c.th);
      });
      table.columns = cycle_columns();
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double tc = hot ? c.tc : values[i];
        const double th = hot ? values[i] : c.th;
        const auto& r = results[i];
        table.rows.push_back(cycle_row(c, tc, th, r.report ? &*r.report : nullptr, r.error));
      }
      break;
    }
    case SweepAxis::RatioOptimize: {
      spec.grid.validate("T_c/T_h grid", /*allow_zero=*/false);
      if (!(c.tc > 0.0)) throw ConfigError("ratio optimisation needs T_c > 0");
      const auto xs = spec.grid.expand();
      using Outcome = std::pair<std::optional<OptimizationResult>, std::string>;
      const auto results = parallel_map<Outcome>(xs.size(), threads, [&](std::size_t i) -> Outcome {
        try {
          return {optimize_ratio(c.variant, c.order, c.tc, c.tc / xs[i], c.N, c.trap, spec.optimize), {}};
        } catch (const NumericalError& e) {
          return {std::nullopt, e.what()};
        } catch (const DomainError& e) {
          return {std::nullopt, e.what()};
        }
      });
      table.columns = {"variant", "order", "N", "trap", "T_c/T_h", "T_c[T_F]", "T_h[T_F]", "best_ratio",
                       "W_max[E_F]", "eta_mw", "sigma", "sigma_s", "eta_carnot", "eta_ca", "on_boundary", "error"};
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double th = c.tc / xs[i];
        const auto b = analytics::bounds(c.tc, th, c.ratio_squared);
        std::vector<Cell> row{std::string(to_string(c.variant)), std::string(to_string(c.order)), c.N,
                              std::string(to_string(c.trap)), xs[i], c.tc, th};
        if (const auto& r = results[i].first) {
          row.insert(row.end(), {r->best_ratio, r->w_max, opt_cell(r->eta_mw), opt_cell(r->sigma),
                                 opt_cell(r->sigma_s), b.carnot, b.curzon_ahlborn,
                                 std::string(r->on_boundary ? "true" : "false")});
        } else {
          for (int k = 0; k < 5; ++k) row.emplace_back(std::monostate{});
          row.insert(row.end(), {b.carnot, b.curzon_ahlborn, Cell(std::monostate{})});
        }
        row.emplace_back(results[i].second);
        table.rows.push_back(std::move(row));
      }
      break;
    }
    case SweepAxis::ModeAtlas: {
      const ModeAtlas atlas = mode_atlas(c, spec.grid, spec.grid2, threads);
      table.columns = {"variant", "order", "T_c[T_F]", "T_h[T_F]", "mode", "error"};
      for (std::size_t i = 0; i < atlas.tc.size(); ++i) {
        for (std::size_t j = 0; j < atlas.th.size(); ++j) {
          const std::size_t k = i * atlas.th.size() + j;
          table.rows.push_back({std::string(to_string(c.variant)), std::string(to_string(c.order)), atlas.tc[i],
                                atlas.th[j], std::string(to_string(atlas.cells[k])), atlas.errors[k]});
        }
      }
      break;
    }
  }
  return table;
}

}  // namespace statengine
