// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "statengine/harness.hpp"
#include "statengine/validation.hpp"

namespace statengine::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidationBreach = 1;
inline constexpr int kConfig = 2;
inline constexpr int kNumerical = 3;
}  // namespace exit_code

struct Options {
  std::string variant = "A";
  std::string order = "bg-tg";
  std::string trap = "box";
  long N = 500;
  double ratio2 = 0.5;
  double tc = 0.0;
  double th = 1.0;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;

  // sweep / optimize
  std::string axis = "hot";
  double min = 0.05;
  double max = 10.0;
  int points = 200;
  bool linear = false;
  std::vector<double> values;
  double ratio_min = 0.2;
  double ratio_max = 10.0;
  int coarse_points = 64;

  // atlas
  double tc_min = 0.02, tc_max = 2.0, th_min = 0.02, th_max = 2.0;
  int resolution = 200;
};

inline const std::map<std::string, Variant> kVariants{{"A", Variant::A},
                                                      {"T", Variant::T},
                                                      {"GV", Variant::GV},
                                                      {"single", Variant::BaselineSingle},
                                                      {"fermi", Variant::BaselineFermi},
                                                      {"bose", Variant::BaselineBose}};
inline const std::map<std::string, Order> kOrders{{"bg-tg", Order::BgTg}, {"tg-bg", Order::TgBg}};
inline const std::map<std::string, TrapKind> kTraps{{"box", TrapKind::Box}, {"harmonic", TrapKind::Harmonic}};
inline const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::CSV}, {"json", OutputFormat::JSON}};
inline const std::map<std::string, SweepAxis> kAxes{{"hot", SweepAxis::HotTemp},
                                                    {"cold", SweepAxis::ColdTemp},
                                                    {"ratio-optimize", SweepAxis::RatioOptimize},
                                                    {"mode-atlas", SweepAxis::ModeAtlas}};

template <class T>
T lookup(const std::map<std::string, T>& m, const std::string& key, const std::string& what) {
  const auto it = m.find(key);
  if (it == m.end()) throw ConfigError("unknown " + what + " '" + key + "'");
  return it->second;
}

/// Worker count: STATENGINE_THREADS, then --threads, then the hardware.
inline unsigned resolve_threads(unsigned flag) {
  if (const char* env = std::getenv("STATENGINE_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("STATENGINE_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  if (flag > 0) return flag;
  return std::max(1u, std::thread::hardware_concurrency());
}

inline CycleTemplate cycle_template(const Options& o) {
  CycleTemplate c;
  c.variant = lookup(kVariants, o.variant, "variant");
  c.order = is_baseline(c.variant) ? Order::NotApplicable : lookup(kOrders, o.order, "order");
  c.trap = lookup(kTraps, o.trap, "trap");
  c.N = o.N;
  c.ratio_squared = o.ratio2;
  c.tc = o.tc;
  c.th = o.th;
  if (c.N < 1) throw ConfigError("N must be >= 1");
  if (!(o.ratio2 > 0.0) || !(o.ratio2 < 1.0)) throw ConfigError("ratio2 must lie in (0, 1)");
  if (!std::isfinite(o.tc) || !std::isfinite(o.th) || o.tc < 0.0 || o.th < 0.0) {
    throw ConfigError("temperatures must be finite and >= 0");
  }
  return c;
}

/// Resolved configuration echoed into every output. The worker count is
/// left out so that outputs do not depend on it.
inline ConfigEcho echo(const std::string& command, const Options& o, const CycleTemplate& c) {
  ConfigEcho e{{"command", command},
               {"variant", to_string(c.variant)},
               {"order", to_string(c.order)},
               {"trap", to_string(c.trap)},
               {"N", std::to_string(c.N)},
               {"ratio2", format_number(c.ratio_squared)},
               {"units", "energies in E_F, temperatures in T_F (Fermi values of N particles at point b)"}};
  if (command == "cycle") {
    e.emplace_back("tc", format_number(c.tc));
    e.emplace_back("th", format_number(c.th));
  } else if (command == "sweep" || command == "optimize") {
    e.emplace_back("axis", command == "optimize" ? "ratio-optimize" : o.axis);
    if (command == "optimize" || o.axis != "hot") e.emplace_back("tc", format_number(c.tc));
    if (command == "sweep" && o.axis == "cold") e.emplace_back("th", format_number(c.th));
    if (!o.values.empty()) {
      std::string v;
      for (double x : o.values) v += (v.empty() ? "" : " ") + format_number(x);
      e.emplace_back("values", v);
    } else {
      e.emplace_back("min", format_number(o.min));
      e.emplace_back("max", format_number(o.max));
      e.emplace_back("points", std::to_string(o.points));
      e.emplace_back("spacing", o.linear ? "linear" : "log");
    }
    if (command == "optimize" || o.axis == "ratio-optimize") {
      e.emplace_back("ratio_min", format_number(o.ratio_min));
      e.emplace_back("ratio_max", format_number(o.ratio_max));
      e.emplace_back("coarse_points", std::to_string(o.coarse_points));
    }
  } else if (command == "atlas") {
    e.emplace_back("tc_range", format_number(o.tc_min) + " " + format_number(o.tc_max));
    e.emplace_back("th_range", format_number(o.th_min) + " " + format_number(o.th_max));
    e.emplace_back("resolution", std::to_string(o.resolution));
  }
  return e;
}

/// Writes to --out, or to `fallback` when no path is given.
inline void emit(const Options& o, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (o.out.empty() || o.out == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + o.out + "'");
  write(file);
  if (!file) throw ConfigError("failed writing '" + o.out + "'");
}

inline void print_cycle(std::ostream& os, const Options& o, const CycleTemplate& c, const CycleReport& r) {
  const ConfigEcho cfg = echo("cycle", o, c);
  const double u = r.energy_unit;
  Table strokes;
  strokes.columns = {"stroke", "kind", "dU[E_F]", "W[E_F]", "Q[E_F]", "Q_s[E_F]", "W_s[E_F]", "stats_out",
                     "T_out[T_F]"};
  for (std::size_t i = 0; i < r.ledgers.size(); ++i) {
    const auto& l = r.ledgers[i];
    strokes.rows.push_back({static_cast<long>(i + 1), std::string(to_string(l.kind)), l.dU / u, l.W / u, l.Q / u,
                            l.Q_s / u, l.W_s / u, std::string(to_string(l.state_out.stats())),
                            l.state_out.temperature() / u});
  }
  Table summary;
  summary.columns = cycle_columns();
  summary.rows.push_back(cycle_row(c, c.tc, c.th, &r, ""));

  if (lookup(kFormats, o.format, "format") == OutputFormat::JSON) {
    nlohmann::ordered_json doc;
    doc["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg) doc["config"][k] = v;
    nlohmann::ordered_json rep = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < summary.columns.size(); ++i) rep[summary.columns[i]] = cell_json(summary.rows[0][i]);
    rep["strokes"] = nlohmann::ordered_json::array();
    for (const auto& row : strokes.rows) {
      nlohmann::ordered_json s = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) s[strokes.columns[i]] = cell_json(row[i]);
      rep["strokes"].push_back(std::move(s));
    }
    doc["report"] = std::move(rep);
    os << doc.dump(2) << '\n';
    return;
  }
  write_csv(os, summary, cfg);
  os << '\n';
  write_csv(os, strokes, {});
}

inline int run_validate(std::ostream& out) {
  const auto checks = validation::run_oracle_suite();
  bool ok = true;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-30s err=%-12.4g tol=%-8.3g %s", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.error, c.tolerance, c.window.c_str());
    out << line << '\n';
    ok = ok && c.passed;
  }
  return ok ? exit_code::kOk : exit_code::kValidationBreach;
}

inline void add_cycle_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--variant", o.variant, "A, T, GV, single, fermi, bose")->capture_default_str();
  cmd->add_option("--order", o.order, "bg-tg or tg-bg")->capture_default_str();
  cmd->add_option("--trap", o.trap, "box or harmonic")->capture_default_str();
  cmd->add_option("--N", o.N, "particle number")->capture_default_str();
  cmd->add_option("--ratio2", o.ratio2, "(L_b/L_a)^2")->capture_default_str();
  cmd->add_option("--tc", o.tc, "cold bath temperature [T_F]")->capture_default_str();
  cmd->add_option("--th", o.th, "hot bath temperature [T_F]")->capture_default_str();
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (STATENGINE_THREADS overrides)");
}

inline void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--min", o.min, "grid start")->capture_default_str();
  cmd->add_option("--max", o.max, "grid end")->capture_default_str();
  cmd->add_option("--points", o.points, "grid points")->capture_default_str();
  cmd->add_flag("--linear", o.linear, "linear instead of log spacing");
  cmd->add_option("--values", o.values, "explicit grid values");
  cmd->add_option("--ratio-min", o.ratio_min, "lower end of the L_a/L_b search")->capture_default_str();
  cmd->add_option("--ratio-max", o.ratio_max, "upper end of the L_a/L_b search")->capture_default_str();
  cmd->add_option("--coarse-points", o.coarse_points, "coarse scan points")->capture_default_str();
}

inline Grid grid_from(const Options& o) {
  Grid g;
  g.min = o.min;
  g.max = o.max;
  g.points = o.points;
  g.log_spaced = !o.linear;
  g.values = o.values;
  return g;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Statistical quantum heat engine simulator"};
  app.set_config("--config", "", "key = value config file; [section] per subcommand");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string command;
  CLI::App* cycle = app.add_subcommand("cycle", "run one cycle and print its report");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a cycle along a temperature grid");
  CLI::App* optimize = app.add_subcommand("optimize", "maximise work over the compression ratio on a T_c/T_h grid");
  CLI::App* atlas = app.add_subcommand("atlas", "operational-mode atlas over (T_c, T_h)");
  CLI::App* validate = app.add_subcommand("validate", "analytic-vs-numeric oracle suite");
  for (CLI::App* cmd : {cycle, sweep_cmd, optimize, atlas}) add_cycle_flags(cmd, o);
  sweep_cmd->add_option("--axis", o.axis, "hot, cold, ratio-optimize, mode-atlas")->capture_default_str();
  add_grid_flags(sweep_cmd, o);
  add_grid_flags(optimize, o);
  for (CLI::App* cmd : {atlas, sweep_cmd}) {
    cmd->add_option("--tc-min", o.tc_min, "atlas cold-bath range start [T_F]")->capture_default_str();
    cmd->add_option("--tc-max", o.tc_max, "atlas cold-bath range end [T_F]")->capture_default_str();
    cmd->add_option("--th-min", o.th_min, "atlas hot-bath range start [T_F]")->capture_default_str();
    cmd->add_option("--th-max", o.th_max, "atlas hot-bath range end [T_F]")->capture_default_str();
    cmd->add_option("--resolution", o.resolution, "cells per axis")->capture_default_str();
  }

  std::vector<std::string> argv_store{"statengine"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kConfig;
  }

  try {
    if (validate->parsed()) return run_validate(out);

    if (optimize->parsed() && o.axis == "hot") o.axis = "ratio-optimize";
    if (optimize->parsed() && sweep_cmd->count("--min") == 0 && optimize->count("--min") == 0) {
      o.min = 0.02;
      o.max = 0.98;
      o.points = 49;
      o.linear = true;
    }
    if (optimize->parsed() && optimize->count("--tc") == 0) o.tc = 0.1;
    const char* name = cycle->parsed() ? "cycle" : sweep_cmd->parsed() ? "sweep" : optimize->parsed() ? "optimize" : "atlas";
    const CycleTemplate c = cycle_template(o);
    const OutputFormat format = lookup(kFormats, o.format, "format");
    const unsigned threads = resolve_threads(o.threads);

    if (cycle->parsed()) {
      const CycleReport r = run_cycle(c.spec());
      emit(o, out, [&](std::ostream& os) { print_cycle(os, o, c, r); });
      return exit_code::kOk;
    }

    SweepSpec spec;
    spec.cycle = c;
    spec.format = format;
    spec.output_path = o.out;
    spec.optimize = {o.ratio_min, o.ratio_max, o.coarse_points, 1e-6};
    std::string echo_name = name;
    if (atlas->parsed() || o.axis == "mode-atlas") {
      spec.axis = SweepAxis::ModeAtlas;
      spec.grid = Grid{o.tc_min, o.tc_max, o.resolution, false, {}};
      spec.grid2 = Grid{o.th_min, o.th_max, o.resolution, false, {}};
      if (o.resolution < 2) throw ConfigError("resolution must be >= 2");
      if (!(o.tc_max > o.tc_min) || !(o.th_max > o.th_min)) throw ConfigError("atlas ranges need positive length");
      echo_name = "atlas";
    } else {
      spec.axis = lookup(kAxes, o.axis, "axis");
      spec.grid = grid_from(o);
    }
    const Table table = statengine::sweep(spec, threads);
    const ConfigEcho cfg = echo(echo_name, o, c);
    emit(o, out, [&](std::ostream& os) { write_table(os, table, cfg, format); });
    return exit_code::kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_code::kConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_code::kConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_code::kNumerical;
  }
}

}  // namespace statengine::cli
