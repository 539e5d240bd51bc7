#include "algnet/busy_beaver.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace algnet::machine {

namespace {

void enumerate_from(const PrefixDecoder& state, Bitstring& prefix, std::size_t max_bits,
                    std::vector<Bitstring>& out) {
  if (prefix.size() >= max_bits) return;
  for (bool bit : {false, true}) {
    PrefixDecoder next = state;
    prefix.push_back(bit);
    switch (next.push(bit)) {
      case PrefixDecoder::Status::Complete: out.push_back(prefix); break;
      case PrefixDecoder::Status::NeedMore: enumerate_from(next, prefix, max_bits, out); break;
      case PrefixDecoder::Status::Overflow: break;
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Program> enumerate_programs(std::size_t max_bits) {
  std::vector<Bitstring> encodings;
  Bitstring prefix;
  enumerate_from(PrefixDecoder{}, prefix, max_bits, encodings);
  std::sort(encodings.begin(), encodings.end());
  std::vector<Program> programs;
  programs.reserve(encodings.size());
  for (const auto& e : encodings) programs.push_back(parse_program(e));
  return programs;
}

const BBEntry& BBTable::at(std::size_t n) const {
  if (n == 0 || n > entries_.size())
    throw std::out_of_range("BB table has no entry for n=" + std::to_string(n));
  return entries_[n - 1];
}

std::optional<Natural> BBTable::exact(std::size_t n) const {
  if (n == 0 || n > entries_.size()) return std::nullopt;
  const auto& e = entries_[n - 1];
  if (!e.has_value || e.unknown_count != 0) return std::nullopt;
  return e.value;
}

std::size_t BBTable::resolved_through() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries_) {
    if (e.unknown_count != 0) break;
    n = e.n;
  }
  return n;
}

std::optional<std::size_t> BBTable::time_overhead() const {
  const std::size_t resolved = resolved_through();
  for (std::size_t c = 0; c < resolved; ++c) {
    bool fits = true;
    for (std::size_t l = 1; l + c <= resolved && fits; ++l) {
      const auto& target = entries_[l + c - 1];
      fits = target.has_value && target.value > entries_[l - 1].max_steps;
    }
    if (fits) return c;
  }
  return std::nullopt;
}

void BBTable::write_csv(std::ostream& os) const {
  os << "n,bb_value,witness_bits,unknown_count,budget,max_steps\n";
  for (const auto& e : entries_) {
    os << e.n << ',' << (e.has_value ? to_decimal(e.value) : std::string()) << ',' << e.witness.str() << ','
       << e.unknown_count << ',' << budget_ << ',' << e.max_steps << '\n';
  }
}

BBTable BBTable::read_csv(std::istream& is) {
  std::string line;
  std::vector<BBEntry> entries;
  std::uint64_t budget = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (line.back() == ',') cols.emplace_back();
    if (cols.size() != 6) throw std::runtime_error("bad BB csv row: " + line);
    BBEntry e;
    e.n = std::stoull(cols[0]);
    e.has_value = !cols[1].empty();
    if (e.has_value) e.value = parse_natural(cols[1]);
    e.witness = Bitstring(cols[2]);
    e.unknown_count = std::stoull(cols[3]);
    budget = std::stoull(cols[4]);
    e.max_steps = std::stoull(cols[5]);
    entries.push_back(std::move(e));
  }
  return BBTable(std::move(entries), budget);
}

BBTable build_bb_table(std::size_t max_bits, std::uint64_t budget, const std::vector<Program>& programs,
                       const std::vector<MachineVerdict>& verdicts) {
  std::vector<BBEntry> entries(max_bits);
  for (std::size_t n = 1; n <= max_bits; ++n) entries[n - 1].n = n;

  // Per exact length first, then prefix maxima. Programs are in enumeration
  // order, so the first strictly larger value wins ties.
  std::vector<BBEntry> exact_len(max_bits + 1);
  for (std::size_t i = 0; i < programs.size(); ++i) {
    const auto len = programs[i].length();
    auto& e = exact_len[len];
    if (verdicts[i].kind == VerdictKind::BudgetExhausted) {
      ++e.unknown_count;
      continue;
    }
    if (!verdicts[i].halted()) continue;
    e.max_steps = std::max(e.max_steps, verdicts[i].steps);
    const Natural v = verdicts[i].output.to_natural();
    if (!e.has_value || v > e.value) {
      e.has_value = true;
      e.value = v;
      e.witness = programs[i].encoding();
    }
  }
  BBEntry running;
  for (std::size_t n = 1; n <= max_bits; ++n) {
    const auto& e = exact_len[n];
    running.unknown_count += e.unknown_count;
    running.max_steps = std::max(running.max_steps, e.max_steps);
    if (e.has_value && (!running.has_value || e.value > running.value)) {
      running.has_value = true;
      running.value = e.value;
      running.witness = e.witness;
    }
    running.n = n;
    entries[n - 1] = running;
  }
  return BBTable(std::move(entries), budget);
}

std::vector<MachineVerdict> evaluate_all(const std::vector<Program>& programs, const Bitstring& input,
                                         std::uint64_t budget) {
  std::vector<MachineVerdict> verdicts(programs.size());
  const auto count = static_cast<std::int64_t>(programs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) {
    verdicts[static_cast<std::size_t>(i)] = oracle(programs[static_cast<std::size_t>(i)], input, budget);
  }
  return verdicts;
}

BBTable enumerate_bb(std::size_t max_bits, std::uint64_t budget) {
  const auto programs = enumerate_programs(max_bits);
  return build_bb_table(max_bits, budget, programs, evaluate_all(programs, Bitstring{}, budget));
}

namespace serial {

std::vector<MachineVerdict> evaluate_all(const std::vector<Program>& programs, const Bitstring& input,
                                         std::uint64_t budget) {
  std::vector<MachineVerdict> verdicts;
  verdicts.reserve(programs.size());
  for (const auto& p : programs) verdicts.push_back(oracle(p, input, budget));
  return verdicts;
}

BBTable enumerate_bb(std::size_t max_bits, std::uint64_t budget) {
  const auto programs = enumerate_programs(max_bits);
  return build_bb_table(max_bits, budget, programs, serial::evaluate_all(programs, Bitstring{}, budget));
}

}  // namespace serial

}  // namespace algnet::machine
