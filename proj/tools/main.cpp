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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using mergecode::cli::RunConfig;

void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--input", cfg.input, "Distribution JSON file ('-' for stdin)")->required();
  sub.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--radix", cfg.radix, "Override the code radix D");
  sub.add_flag("--drop-zeros", cfg.drop_zeros, "Drop zero-probability symbols instead of failing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal real-valued prefix-code lengths for max/average length trade-offs"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string output;
  app.add_option("--output", output, "Write results here instead of stdout");

  auto* schedule = app.add_subcommand("schedule", "Breakpoints, pay-off curve and per-symbol curves");
  add_common(*schedule, cfg);
  schedule->add_option("--grid", cfg.grid, "Number of equally spaced alpha values")
      ->check(CLI::PositiveNumber);
  schedule->add_option("--table", cfg.table, "Emit only one table")
      ->check(CLI::IsMember({"all", "breakpoints", "curve", "symbols"}));

  auto* code = app.add_subcommand("code", "Optimal code at one alpha");
  add_common(*code, cfg);
  code->add_option("--alpha", cfg.alpha, "Trade-off weight in [0, 1]")->required();

  auto* limited = app.add_subcommand("limited", "Minimum average length under a max-length bound");
  add_common(*limited, cfg);
  limited->add_option("--llim", cfg.llim, "Maximum codeword length")->required();

  auto* exp = app.add_subcommand("exp", "Average plus exponential-moment pay-off");
  add_common(*exp, cfg);
  exp->add_option("--t", cfg.t, "Exponential parameter t >= 0")->required();
  exp->add_option("--alpha", cfg.alpha, "Trade-off weight in [0, 1]")->required();
  exp->add_option("--tol", cfg.tol, "Fixed-point tolerance on lengths");
  exp->add_option("--max-iter", cfg.max_iter, "Fixed-point iteration cap");

  auto* waterfill = app.add_subcommand("waterfill", "Water level and weights");
  add_common(*waterfill, cfg);
  auto* wa = waterfill->add_option("--alpha", cfg.alpha, "Trade-off weight in [0, 1]");
  auto* wl = waterfill->add_option("--level", cfg.level, "Target water level (solve for alpha)");
  wa->excludes(wl);

  auto* extend = app.add_subcommand("extend", "Per-symbol bounds on the n-th extension");
  add_common(*extend, cfg);
  extend->add_option("--n", cfg.n, "Largest extension order")->required();
  extend->add_option("--alpha", cfg.alpha, "Trade-off weight in [0, 1]")->required();

  auto* ingest = app.add_subcommand("ingest", "Turn counts (or raw bytes) into a distribution file");
  add_common(*ingest, cfg);
  ingest->add_flag("--bytes", cfg.bytes, "Count the bytes of an arbitrary input file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mergecode::cli::kInputError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  if (output.empty()) return mergecode::cli::run(cfg, std::cout, std::cerr);
  std::ostringstream buffer;
  const int status = mergecode::cli::run(cfg, buffer, std::cerr);
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "[error] cannot open output file '" << output << "'\n";
    return mergecode::cli::kInputError;
  }
  out << buffer.str();
  return status;
}
