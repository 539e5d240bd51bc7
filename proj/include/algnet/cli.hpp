#pragma once

// Experiment harness behind the algnet tool. Commands read an
// ExperimentConfig and write their data files into config.out. Every file
// carries the seed and the config fingerprint; none carries a timestamp.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "algnet/bitstring.hpp"

namespace algnet::cli {

class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Config file: one "key = value" per line, '#' starts a comment, lists are
// comma separated. Keys and defaults are those of ExperimentConfig; see
// config_keys() for the schema.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::vector<std::size_t> n_list{64};
  std::string family = "replicated-random-regular";
  std::string tvg_file;  // overrides family for run and central
  std::size_t c0 = 0;
  std::optional<std::size_t> n_cycles;
  std::uint64_t budget = 100000;
  std::size_t max_bits = 4096;
  Bitstring w{"1"};
  bool w_sweep = false;  // halting-sweep: w cycles through all programs <= w_bits
  std::size_t w_bits = 8;
  std::string s = "p_halt";  // p_halt | identity | program bits
  Bitstring h{"1"};
  Bitstring h_bar{"0"};
  std::size_t trials = 1;
  std::size_t bb_bits = 24;
  std::uint64_t bb_budget = 100000;
  double tau = 1.0;
  std::vector<std::size_t> synergy_x{5};
  std::size_t synergy_bits = 20;
  std::uint64_t synergy_steps = 10000;
  std::size_t slack = 5;

  // Not part of the fingerprint.
  std::filesystem::path out = "out";
  int jobs = 0;  // 0: OpenMP default

  void set(const std::string& key, const std::string& value);  // throws ValidationError
  void validate() const;
  // key=value lines in schema order, excluding out and jobs.
  std::string canonical() const;
  std::string fingerprint() const;  // SHA-256 hex of canonical()
};

const std::vector<std::string>& config_keys();

void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

std::string sha256_hex(const std::string& data);

// Wilson score interval at 95%.
struct Interval {
  double low = 0.0;
  double high = 0.0;
};
Interval wilson95(std::size_t successes, std::size_t trials);

struct SweepRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t all_correct = 0;
  std::size_t condition_trials = 0;
  std::size_t condition_correct = 0;
  std::size_t undecided_w = 0;
  double fraction = 0.0;
  Interval ci;
  // Largest k such that every trial with |w| <= k was all-correct.
  std::optional<std::size_t> l_star;
};

// True when no later N falls below an earlier one beyond the intervals:
// for consecutive rows, ci_high(next) >= ci_low(prev).
bool non_decreasing_within_ci(const std::vector<SweepRow>& rows);

// Commands; each returns the files it wrote. `log` receives human-readable
// progress.
std::vector<std::filesystem::path> cmd_bb(const ExperimentConfig& cfg, std::ostream& log);
std::vector<std::filesystem::path> cmd_tvg(const ExperimentConfig& cfg, std::ostream& log);
std::vector<std::filesystem::path> cmd_run(const ExperimentConfig& cfg, std::ostream& log);
std::vector<std::filesystem::path> cmd_halting_sweep(const ExperimentConfig& cfg, std::ostream& log);
std::vector<std::filesystem::path> cmd_synergy(const ExperimentConfig& cfg, std::ostream& log);
std::vector<std::filesystem::path> cmd_central(const ExperimentConfig& cfg, std::ostream& log);

// Reads back sweep.csv rows into per-N summaries.
std::vector<SweepRow> read_sweep_summary(const std::filesystem::path& sweep_csv);

}  // namespace algnet::cli
