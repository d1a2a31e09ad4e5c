// Copyright 2026 The mergecode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. `run` holds all behaviour so it can be driven from
// tests without spawning a process; main.cpp only parses flags.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "mergecode/mergecode.hpp"

namespace mergecode::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kInfeasible = 2 };

struct RunConfig {
  std::string subcommand;
  std::string input;                 // path, or "-" for stdin
  std::string format;                // json | csv; empty picks the default
  std::optional<int> radix;
  std::optional<double> alpha;
  std::optional<double> t;
  std::optional<double> llim;
  std::optional<double> level;
  std::optional<std::size_t> n;
  std::size_t grid = 1001;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::string table = "all";         // schedule: all | breakpoints | curve | symbols
  bool drop_zeros = false;
  bool bytes = false;                // ingest: count raw bytes of the input
};

using Json = nlohmann::ordered_json;

/// Locale-independent, 12 significant digits.
inline std::string fmt_num(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("mergecode", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("MERGECODE_LOG")) {
    logger->set_level(spdlog::level::from_str(env));
  }
  return logger;
}

inline std::string read_input(const std::string& path) {
  if (path.empty()) throw UsageError("--input is required");
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline bool want_csv(const RunConfig& cfg, bool csv_default) {
  if (cfg.format.empty()) return csv_default;
  if (cfg.format == "csv") return true;
  if (cfg.format == "json") return false;
  throw UsageError("--format must be json or csv");
}

template <class T>
const T& require(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + " is required for this subcommand");
  return *v;
}

inline Json integers_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

inline Json labels_json(const ProbabilityVector& p) {
  Json labels = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) labels.push_back(p.label(i));
  return labels;
}

inline void warn_about_input(const ProbabilityVector& p, spdlog::logger& log) {
  if (p.renormalized) log.warn("input probabilities did not sum to 1; renormalized");
  for (const auto& d : p.dropped) log.warn("dropped zero-mass symbol '{}'", d);
}

// schedule ---------------------------------------------------------------

inline void write_breakpoints_csv(const MergeSchedule& s, std::ostream& out) {
  out << "k,alpha_k,cardinality,wstar,slope\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out << k << ',' << fmt_num(s.alphas[k]) << ',' << s.card[k] << ','
        << fmt_num(s.wstar_at_breakpoint[k]) << ',' << fmt_num(s.slope[k]) << '\n';
  }
}

inline int run_schedule(const RunConfig& cfg, const ProbabilityVector& p, std::ostream& out) {
  if (cfg.table != "all" && cfg.table != "breakpoints" && cfg.table != "curve" &&
      cfg.table != "symbols") {
    throw UsageError("--table must be one of all, breakpoints, curve, symbols");
  }
  if (cfg.grid < 1) throw UsageError("--grid must be at least 1");
  const MergeSchedule s = build_schedule(p);
  const std::vector<double> grid = default_grid(s, cfg.grid);
  std::vector<OptimalCode> codes;
  codes.reserve(grid.size());
  for (double a : grid) codes.push_back(optimal_code(s, p, a));

  const bool all = cfg.table == "all";
  if (!want_csv(cfg, true)) {
    Json doc;
    doc["radix"] = p.radix;
    doc["alpha_max"] = s.alpha_max;
    if (all || cfg.table == "breakpoints") {
      Json rows = Json::array();
      for (std::size_t k = 0; k < s.size(); ++k) {
        rows.push_back({{"k", k}, {"alpha_k", s.alphas[k]}, {"cardinality", s.card[k]},
                        {"wstar", s.wstar_at_breakpoint[k]}, {"slope", s.slope[k]}});
      }
      doc["breakpoints"] = std::move(rows);
    }
    if (all || cfg.table == "curve") {
      Json rows = Json::array();
      for (const auto& c : codes) {
        rows.push_back({{"alpha", c.report.alpha}, {"payoff", c.report.payoff},
                        {"avg_length", c.report.avg_length}, {"max_length", c.report.max_length},
                        {"entropy_w", *c.report.entropy_w}, {"cardinality", *c.report.cardinality}});
      }
      doc["curve"] = std::move(rows);
    }
    if (all || cfg.table == "symbols") {
      Json rows = Json::array();
      for (const auto& c : codes) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          rows.push_back({{"alpha", c.report.alpha}, {"symbol_index", p.perm[i]},
                          {"label", p.label(i)}, {"weight", c.weights.weights[i]},
                          {"real_length", c.lengths.real_lengths[i]},
                          {"int_length", static_cast<std::int64_t>(c.lengths.int_lengths[i])}});
        }
      }
      doc["symbols"] = std::move(rows);
    }
    out << doc.dump(2) << '\n';
    return kOk;
  }

  auto section = [&](const char* name) {
    if (!all) return;
    if (std::string(name) != "breakpoints") out << '\n';
    out << "# " << name << '\n';
  };
  if (all || cfg.table == "breakpoints") {
    section("breakpoints");
    write_breakpoints_csv(s, out);
  }
  if (all || cfg.table == "curve") {
    section("curve");
    out << "alpha,payoff,avg_length,max_length,entropy_w,cardinality\n";
    for (const auto& c : codes) {
      const auto& r = c.report;
      out << fmt_num(r.alpha) << ',' << fmt_num(r.payoff) << ',' << fmt_num(r.avg_length) << ','
          << fmt_num(r.max_length) << ',' << fmt_num(*r.entropy_w) << ',' << *r.cardinality
          << '\n';
    }
  }
  if (all || cfg.table == "symbols") {
    section("symbols");
    out << "alpha,symbol_index,label,weight,real_length,int_length\n";
    for (const auto& c : codes) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        out << fmt_num(c.report.alpha) << ',' << p.perm[i] << ',' << p.label(i) << ','
            << fmt_num(c.weights.weights[i]) << ',' << fmt_num(c.lengths.real_lengths[i]) << ','
            << fmt_num(c.lengths.int_lengths[i]) << '\n';
      }
    }
  }
  return kOk;
}

// code -------------------------------------------------------------------

inline int run_code(const RunConfig& cfg, const ProbabilityVector& p, std::ostream& out) {
  const double alpha = require(cfg.alpha, "--alpha");
  require_alpha(alpha);
  const OptimalCode c = optimal_code(p, alpha);
  if (want_csv(cfg, false)) {
    out << "alpha,symbol_index,label,weight,real_length,int_length\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
      out << fmt_num(alpha) << ',' << p.perm[i] << ',' << p.label(i) << ','
          << fmt_num(c.weights.weights[i]) << ',' << fmt_num(c.lengths.real_lengths[i]) << ','
          << fmt_num(c.lengths.int_lengths[i]) << '\n';
    }
    return kOk;
  }
  Json symbols = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    symbols.push_back({{"canonical_index", i}, {"symbol_index", p.perm[i]},
                       {"label", p.label(i)}, {"probability", p.probs[i]},
                       {"weight", c.weights.weights[i]},
                       {"real_length", c.lengths.real_lengths[i]},
                       {"int_length", static_cast<std::int64_t>(c.lengths.int_lengths[i])}});
  }
  Json doc;
  doc["alpha"] = alpha;
  doc["radix"] = p.radix;
  doc["cardinality"] = *c.report.cardinality;
  doc["payoff"] = c.report.payoff;
  doc["avg_length"] = c.report.avg_length;
  doc["max_length"] = c.report.max_length;
  doc["entropy_w"] = *c.report.entropy_w;
  doc["entropy_p"] = c.report.entropy_p;
  doc["kraft_real"] = c.lengths.kraft_real;
  doc["kraft_int"] = c.lengths.kraft_int;
  doc["lengths_real_original_order"] = p.to_original<double>(c.lengths.real_lengths);
  doc["symbols"] = std::move(symbols);
  out << doc.dump(2) << '\n';
  return kOk;
}

// limited ----------------------------------------------------------------

inline int run_limited(const RunConfig& cfg, const ProbabilityVector& p, std::ostream& out,
                       spdlog::logger& log) {
  const double llim = require(cfg.llim, "--llim");
  Json doc;
  try {
    const LimitedCodeResult r = limited_code(p, llim);
    doc["feasible"] = true;
    doc["l_lim"] = llim;
    doc["alpha"] = r.alpha_hat;
    doc["lengths_real"] = r.lengths.real_lengths;
    doc["lengths_int"] = integers_json(r.lengths.int_lengths);
    doc["avg_length"] = r.avg_length;
    doc["max_length"] = r.lengths.max_length;
    doc["labels"] = labels_json(p);
  } catch (const InfeasibleError& e) {
    log.error("{}", e.what());
    doc["feasible"] = false;
    doc["l_lim"] = llim;
    doc["min_max_length"] = e.min_max_length();
    out << doc.dump(2) << '\n';
    return kInfeasible;
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

// exp --------------------------------------------------------------------

inline int run_exp(const RunConfig& cfg, const ProbabilityVector& p, std::ostream& out,
                   spdlog::logger& log) {
  const double t = require(cfg.t, "--t");
  const double alpha = require(cfg.alpha, "--alpha");
  const TiltedSolution sol = solve_two_parameter(p, t, alpha, {.tol = cfg.tol, .max_iter = cfg.max_iter});
  const ExpPayoffReport rep = payoff_t(sol.lengths, p, t, alpha);
  Json doc;
  doc["t"] = t;
  doc["alpha"] = alpha;
  doc["converged"] = sol.converged;
  doc["iterations"] = sol.iterations;
  doc["residual"] = sol.residual;
  doc["lengths_real"] = sol.lengths.real_lengths;
  doc["lengths_int"] = integers_json(sol.lengths.int_lengths);
  doc["nu"] = sol.nu;
  doc["labels"] = labels_json(p);
  doc["kraft_real"] = sol.lengths.kraft_real;
  doc["payoff_t"] = rep.payoff_t;
  doc["exp_term"] = rep.exp_term;
  doc["avg_length"] = rep.avg_length;
  doc["renyi"] = rep.renyi ? Json(*rep.renyi) : Json(nullptr);
  out << doc.dump(2) << '\n';
  if (!sol.converged) {
    log.error("fixed point did not converge after {} iterations (residual {})", sol.iterations,
              fmt_num(sol.residual));
    return kInputError;
  }
  return kOk;
}

// waterfill --------------------------------------------------------------

inline int run_waterfill(const RunConfig& cfg, const ProbabilityVector& p, std::ostream& out,
                         spdlog::logger& log) {
  if (cfg.alpha.has_value() == cfg.level.has_value()) {
    throw UsageError("waterfill needs exactly one of --alpha or --level");
  }
  double alpha = 0.0;
  if (cfg.level) {
    try {
      alpha = alpha_for_level(p, *cfg.level);
    } catch (const InfeasibleError& e) {
      log.error("{}", e.what());
      Json doc;
      doc["feasible"] = false;
      doc["level"] = *cfg.level;
      doc["min_max_length"] = e.min_max_length();
      out << doc.dump(2) << '\n';
      return kInfeasible;
    }
  } else {
    alpha = *cfg.alpha;
  }
  const WaterLevel wl = water_level(p, alpha);
  const WeightVector w = waterfill_weights(p, alpha);
  Json doc;
  doc["feasible"] = true;
  doc["level"] = wl.level;
  doc["alpha"] = alpha;
  doc["flooded_count"] = wl.flooded_count;
  doc["weights"] = w.weights;
  doc["labels"] = labels_json(p);
  out << doc.dump(2) << '\n';
  return kOk;
}

// extend -----------------------------------------------------------------

inline int run_extend(const RunConfig& cfg, const ProbabilityVector& p, std::ostream& out) {
  const std::size_t n = require(cfg.n, "--n");
  const double alpha = require(cfg.alpha, "--alpha");
  if (n < 1) throw UsageError("--n must be at least 1");
  std::vector<ExtensionReport> rows;
  for (std::size_t k = 1; k <= n; ++k) rows.push_back(extension_bounds(p, alpha, k));
  if (want_csv(cfg, true)) {
    out << "n,lower,per_symbol,upper\n";
    for (const auto& r : rows) {
      out << r.n << ',' << fmt_num(r.lower) << ',' << fmt_num(r.per_symbol_payoff) << ','
          << fmt_num(r.upper) << '\n';
    }
    return kOk;
  }
  Json doc = Json::array();
  for (const auto& r : rows) {
    doc.push_back({{"n", r.n}, {"alpha", r.alpha}, {"lower", r.lower},
                   {"per_symbol", r.per_symbol_payoff}, {"upper", r.upper}});
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

// ingest -----------------------------------------------------------------

inline std::string byte_label(unsigned char c) {
  if (c > 0x20 && c < 0x7f && c != '"' && c != '\\') return std::string(1, static_cast<char>(c));
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", c);
  return buf;
}

inline int run_ingest(const RunConfig& cfg, const std::string& text, std::ostream& out,
                      spdlog::logger& log) {
  ProbabilityVector p;
  if (cfg.bytes) {
    std::vector<std::uint64_t> hist(256, 0);
    for (unsigned char c : text) ++hist[c];
    std::vector<SymbolCount> counts;
    for (int b = 0; b < 256; ++b) {
      if (hist[b]) counts.emplace_back(byte_label(static_cast<unsigned char>(b)), hist[b]);
    }
    if (counts.empty()) throw Error(Errc::EmptyInput, "input file is empty");
    p = from_counts(counts, cfg.radix.value_or(2));
  } else {
    p = load_distribution(text, {.radix = cfg.radix, .drop_zeros = cfg.drop_zeros});
  }
  warn_about_input(p, log);
  Json doc;
  doc["radix"] = p.radix;
  doc["probabilities"] = p.probs;
  doc["labels"] = labels_json(p);
  out << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace detail

/// Execute one subcommand. Results go to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 when a length limit or level is infeasible and 1
/// on any input or parameter error.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto logger = detail::make_logger(err);
  try {
    const std::string text = detail::read_input(cfg.input);
    if (cfg.subcommand == "ingest") return detail::run_ingest(cfg, text, out, *logger);

    const ProbabilityVector p =
        load_distribution(text, {.radix = cfg.radix, .drop_zeros = cfg.drop_zeros});
    detail::warn_about_input(p, *logger);
    logger->info("loaded {} symbols, radix {}", p.size(), p.radix);

    if (cfg.subcommand == "schedule") return detail::run_schedule(cfg, p, out);
    if (cfg.subcommand == "code") return detail::run_code(cfg, p, out);
    if (cfg.subcommand == "limited") return detail::run_limited(cfg, p, out, *logger);
    if (cfg.subcommand == "exp") return detail::run_exp(cfg, p, out, *logger);
    if (cfg.subcommand == "waterfill") return detail::run_waterfill(cfg, p, out, *logger);
    if (cfg.subcommand == "extend") return detail::run_extend(cfg, p, out);
    throw detail::UsageError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const InfeasibleError& e) {
    logger->error("{}", e.what());
    return kInfeasible;
  } catch (const Error& e) {
    logger->error("{}: {}", to_string(e.code()), e.what());
    return kInputError;
  } catch (const detail::UsageError& e) {
    logger->error("{}", e.what());
    return kInputError;
  }
}

}  // namespace mergecode::cli
