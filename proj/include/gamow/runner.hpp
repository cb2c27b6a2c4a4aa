#pragma once

#include <map>
#include <string>

#include "gamow/config.hpp"

namespace gamow {

// Each subcommand renders its artifact to a string; the CLI decides whether it
// lands on stdout or in output.path. Everything below is deterministic for a
// fixed config (single-threaded, fmt17 formatting, no wall-clock content).

std::string run_poles(const RunConfig& cfg);

// Diagnostics at N = 5, 10, ..., truncation_N evaluated at the first probe.
std::string run_sumrules(const RunConfig& cfg);

std::string run_probabilities(const RunConfig& cfg);

// series: "remainder", "survival", "nonescape", or "all".
std::string run_tailfit(const RunConfig& cfg, const std::string& series);

std::string run_oracle_compare(const RunConfig& cfg);

// The five data artifacts keyed by file name: poles.csv, sumrules.csv,
// probabilities.csv, tailfit.json, oracle_compare.csv. CSV layout regardless
// of output.format (the report set has a fixed shape).
std::map<std::string, std::string> generate_artifacts(const RunConfig& cfg);

// Full artifact set: the five above plus report.json embedding the acceptance
// verdicts. Generation runs the entire pipeline twice and byte-compares
// (determinism is itself a verdict), so this is the expensive entry point.
std::map<std::string, std::string> run_report(const RunConfig& cfg,
                                              bool* all_pass);

}  // namespace gamow
