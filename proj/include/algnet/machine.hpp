#pragma once

// Prefix-free register machine.
//
// A program is gamma(n + 1) followed by exactly n instructions. Each
// instruction is a 2-bit opcode followed by gamma-coded operands:
//
//   00 INC r          gamma(r + 1)
//   01 DECJZ r d      gamma(r + 1) gamma(d)   if r == 0 jump +d, else r -= 1
//   10 JMPBACK d      gamma(d)                jump -d
//   11 ZERO r         gamma(r + 1)
//
// Every field is a complete prefix code, so the set of programs is a complete
// prefix-free code: every infinite bit stream starts with exactly one program.
// A jump that leaves [0, n) halts the machine. Input is loaded into R0 through
// the canonical string <-> natural bijection and the output is string(R0).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "algnet/bitstring.hpp"

namespace algnet::machine {

class MalformedEncoding : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Opcode : std::uint8_t { Inc = 0, DecJz = 1, JmpBack = 2, Zero = 3 };

struct Instruction {
  Opcode op = Opcode::Inc;
  std::uint64_t reg = 0;     // INC, DECJZ, ZERO
  std::uint64_t offset = 0;  // DECJZ (forward) and JMPBACK (backward), >= 1

  static Instruction inc(std::uint64_t r) { return {Opcode::Inc, r, 0}; }
  static Instruction decjz(std::uint64_t r, std::uint64_t d) { return {Opcode::DecJz, r, d}; }
  static Instruction jmpback(std::uint64_t d) { return {Opcode::JmpBack, 0, d}; }
  static Instruction zero(std::uint64_t r) { return {Opcode::Zero, r, 0}; }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

std::string to_string(const Instruction& ins);

class Program {
public:
  // The empty program "1".
  Program();
  explicit Program(std::vector<Instruction> instructions);

  const Bitstring& encoding() const noexcept { return encoding_; }
  const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
  std::size_t length() const noexcept { return encoding_.size(); }

  // Registers are renumbered densely; R0 is always slot 0.
  std::size_t slot_count() const noexcept { return slot_count_; }
  std::uint32_t slot(std::size_t instruction) const noexcept { return slots_[instruction]; }

  std::string disassemble() const;

  friend bool operator==(const Program& a, const Program& b) { return a.encoding_ == b.encoding_; }

private:
  void index_registers();

  std::vector<Instruction> instructions_;
  Bitstring encoding_;
  std::vector<std::uint32_t> slots_;
  std::size_t slot_count_ = 1;
};

struct DecodeResult {
  Program program;
  std::size_t consumed = 0;  // bits of the self-delimiting prefix
};

// Decodes the program starting at `pos`; throws MalformedEncoding when the
// bits run out before the program is complete.
DecodeResult decode(const Bitstring& bits, std::size_t pos = 0);
// Like decode() but also requires the program to consume every bit.
Program parse_program(const Bitstring& bits);
Bitstring encode(const std::vector<Instruction>& instructions);

// Bit-at-a-time recogniser for program encodings. Copyable, so the
// enumerator can branch on it.
class PrefixDecoder {
public:
  enum class Status : std::uint8_t { NeedMore, Complete, Overflow };

  Status push(bool bit) noexcept;
  Status status() const noexcept { return status_; }
  std::size_t length() const noexcept { return length_; }

private:
  enum class Field : std::uint8_t { Header, Opcode, Register, Offset };

  bool gamma_push(bool bit) noexcept;  // true once a gamma value is complete
  void field_done() noexcept;

  Status status_ = Status::NeedMore;
  Field field_ = Field::Header;
  std::uint8_t opcode_ = 0;
  std::uint8_t opcode_bits_ = 0;
  bool counting_zeros_ = true;
  std::uint8_t zeros_ = 0;
  std::uint8_t value_bits_left_ = 0;
  std::uint64_t value_ = 0;
  std::uint64_t remaining_ = 0;
  std::size_t length_ = 0;
};

enum class VerdictKind : std::uint8_t { Halted, ProvenNonhalting, BudgetExhausted };

std::string to_string(VerdictKind kind);

struct MachineVerdict {
  VerdictKind kind = VerdictKind::BudgetExhausted;
  Bitstring output;         // meaningful only when halted
  std::uint64_t steps = 0;  // instructions executed (at halt, detection or budget)

  bool halted() const noexcept { return kind == VerdictKind::Halted; }

  friend bool operator==(const MachineVerdict&, const MachineVerdict&) = default;
};

// Plain bounded execution: Halted or BudgetExhausted.
MachineVerdict run(const Program& program, const Bitstring& input, std::uint64_t budget);

// Bounded execution that also proves non-termination. It snapshots the
// configuration at times 1, 3, 7, 15, ... (Brent's scheme) and reports
// ProvenNonhalting when the current configuration
//   - equals the snapshot, or
//   - has the same pc and registers >= the snapshot, where every register that
//     grew was neither zeroed nor found zero by DECJZ since the snapshot.
// In the second case the segment replays forever with the same branch
// decisions, each pass adding the same non-negative offset.
MachineVerdict oracle(const Program& program, const Bitstring& input, std::uint64_t budget);

// Busy Beaver imitation game fitness: natural(output) + 1 for a halting run,
// 0 for a killed node (proven non-halting or out of budget).
Natural fitness(const MachineVerdict& verdict) noexcept;

}  // namespace algnet::machine
