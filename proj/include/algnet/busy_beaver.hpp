#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "algnet/machine.hpp"

namespace algnet::machine {

// Every program with encoding length <= max_bits, ordered by (length, bits).
std::vector<Program> enumerate_programs(std::size_t max_bits);

struct BBEntry {
  std::size_t n = 0;
  Natural value = 0;  // largest output among halting programs of length <= n
  Bitstring witness;  // first such program in enumeration order
  // Budget-exhausted programs of length <= n. Non-zero means `value` is only
  // a lower bound.
  std::uint64_t unknown_count = 0;
  bool has_value = false;  // false below the shortest program length
  std::uint64_t max_steps = 0;  // longest halting time among those programs
};

class BBTable {
public:
  BBTable() = default;
  BBTable(std::vector<BBEntry> entries, std::uint64_t budget)
      : entries_(std::move(entries)), budget_(budget) {}

  std::size_t max_bits() const noexcept { return entries_.size(); }
  std::uint64_t budget() const noexcept { return budget_; }
  const std::vector<BBEntry>& entries() const noexcept { return entries_; }

  // n in [1, max_bits()]
  const BBEntry& at(std::size_t n) const;
  // BB(n) when every program of length <= n was resolved.
  std::optional<Natural> exact(std::size_t n) const;
  // Largest n whose entry is fully resolved, 0 if none.
  std::size_t resolved_through() const noexcept;

  // Smallest C such that BB(l + C) > max_steps(l) for every l with
  // l + C <= resolved_through(): the shortest length that a program computing
  // T(U, p) + 1 can have without contradicting the table. nullopt if no C fits.
  std::optional<std::size_t> time_overhead() const;

  void write_csv(std::ostream& os) const;
  static BBTable read_csv(std::istream& is);

private:
  std::vector<BBEntry> entries_;
  std::uint64_t budget_ = 0;
};

// Runs the oracle on every program of length <= max_bits with empty input.
// OpenMP-parallel over programs; merge is deterministic.
BBTable enumerate_bb(std::size_t max_bits, std::uint64_t budget);

// Per-program oracle verdicts for the same enumeration, in enumeration order.
std::vector<MachineVerdict> evaluate_all(const std::vector<Program>& programs, const Bitstring& input,
                                         std::uint64_t budget);

namespace serial {
BBTable enumerate_bb(std::size_t max_bits, std::uint64_t budget);
std::vector<MachineVerdict> evaluate_all(const std::vector<Program>& programs, const Bitstring& input,
                                         std::uint64_t budget);
}  // namespace serial

// Table assembly from verdicts; shared by both kernels.
BBTable build_bb_table(std::size_t max_bits, std::uint64_t budget, const std::vector<Program>& programs,
                       const std::vector<MachineVerdict>& verdicts);

}  // namespace algnet::machine
