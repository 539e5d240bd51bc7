#pragma once

// Helper programs p_T, p_+1, p_halt and the identity, realised as host-level
// builtins. They are not bit encodings of the register machine: the code is
// complete, so there is no spare codeword to reserve for them. Each builtin
// carries a nominal encoded length used wherever a length bound needs one.

#include <optional>
#include <string>
#include <vector>

#include "algnet/machine.hpp"

namespace algnet::machine {

enum class Builtin : std::uint8_t { Time, Successor, Halt, Identity };

std::string to_string(Builtin b);
std::optional<Builtin> builtin_from_string(const std::string& name);

// Nominal lengths. Time + Successor equals BBTable::time_overhead() of the
// table enumerated through 24 bits at budget 10^5.
inline constexpr std::size_t kTimeLength = 3;
inline constexpr std::size_t kSuccessorLength = 2;
inline constexpr std::size_t kHaltLength = 4;
inline constexpr std::size_t kIdentityLength = 1;

std::size_t nominal_length(Builtin b) noexcept;

// U(p_T o p): string(T(U, p)) when p halts on empty input within budget.
MachineVerdict apply_time(const Program& p, std::uint64_t budget);
// U(p_+1 o q) for a verdict of q: string(natural(U(q)) + 1).
MachineVerdict apply_successor(const MachineVerdict& inner);
// |p_+1 o p_T o p|
inline std::size_t successor_time_length(const Program& p) noexcept {
  return kSuccessorLength + kTimeLength + p.length();
}

struct HaltLabels {
  Bitstring halts{"1"};  // h
  Bitstring loops{"0"};  // h-bar

  friend bool operator==(const HaltLabels&, const HaltLabels&) = default;
};

// Input of p_halt: gamma(n + 1) followed by the program bits.
Bitstring halt_input(Natural n, const Bitstring& program_bits);

// p_halt on a raw input. Simulates the encoded program on empty input for at
// most n + 1 steps: h if it halted within n steps, h-bar otherwise, h-bar for
// malformed input. `budget` caps the simulation; nullopt when the cap was hit
// before the n + 1 bound could be decided.
std::optional<Bitstring> p_halt(const Bitstring& input, const HaltLabels& labels, std::uint64_t budget);
std::optional<Bitstring> p_halt(Natural n, const Program& p, const HaltLabels& labels, std::uint64_t budget);

// The program s applied in the final cycle.
struct FinalProgram {
  enum class Kind : std::uint8_t { Halt, Identity, Custom };
  Kind kind = Kind::Halt;
  Program custom;  // Kind::Custom only

  static FinalProgram halt() { return {}; }
  static FinalProgram identity() { return {Kind::Identity, {}}; }
  static FinalProgram program(Program p) { return {Kind::Custom, std::move(p)}; }

  std::string describe() const;
};

// U(s o x o w). The input presented to s is gamma(x + 1) followed by w.
// Identity returns string(x). A custom program receives that input in R0 and
// runs under plain U; it yields nullopt when it does not halt within budget or
// the input is too wide for a register.
std::optional<Bitstring> evaluate_final(const FinalProgram& s, Natural x, const Bitstring& w,
                                        const HaltLabels& labels, std::uint64_t budget);

// Tuple code: each part as gamma(|part| + 1) followed by its bits.
Bitstring concat_selfdelim(const std::vector<Bitstring>& parts);
// Inverse of concat_selfdelim; throws MalformedEncoding.
std::vector<Bitstring> split_selfdelim(const Bitstring& bits);

}  // namespace algnet::machine
