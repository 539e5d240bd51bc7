#include "algnet/machine.hpp"

#include <algorithm>
#include <sstream>

namespace algnet::machine {

std::string to_string(const Instruction& ins) {
  switch (ins.op) {
    case Opcode::Inc: return "INC R" + std::to_string(ins.reg);
    case Opcode::DecJz:
      return "DECJZ R" + std::to_string(ins.reg) + " +" + std::to_string(ins.offset);
    case Opcode::JmpBack: return "JMPBACK -" + std::to_string(ins.offset);
    case Opcode::Zero: return "ZERO R" + std::to_string(ins.reg);
  }
  return "?";
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Halted: return "halted";
    case VerdictKind::ProvenNonhalting: return "proven-nonhalting";
    case VerdictKind::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

Bitstring encode(const std::vector<Instruction>& instructions) {
  Bitstring out;
  append_gamma(out, instructions.size() + 1);
  for (const auto& ins : instructions) {
    const auto op = static_cast<unsigned>(ins.op);
    out.push_back((op >> 1) & 1);
    out.push_back(op & 1);
    switch (ins.op) {
      case Opcode::Inc:
      case Opcode::Zero: append_gamma(out, ins.reg + 1); break;
      case Opcode::DecJz:
        append_gamma(out, ins.reg + 1);
        append_gamma(out, ins.offset);
        break;
      case Opcode::JmpBack: append_gamma(out, ins.offset); break;
    }
  }
  return out;
}

Program::Program() : encoding_(Bitstring("1")) {}

Program::Program(std::vector<Instruction> instructions) : instructions_(std::move(instructions)) {
  for (const auto& ins : instructions_) {
    if ((ins.op == Opcode::DecJz || ins.op == Opcode::JmpBack) && ins.offset == 0)
      throw std::invalid_argument("jump offset must be >= 1");
  }
  encoding_ = encode(instructions_);
  index_registers();
}

void Program::index_registers() {
  std::vector<std::uint64_t> regs{0};
  for (const auto& ins : instructions_) {
    if (ins.op != Opcode::JmpBack) regs.push_back(ins.reg);
  }
  std::sort(regs.begin(), regs.end());
  regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
  slot_count_ = regs.size();
  slots_.resize(instructions_.size());
  for (std::size_t i = 0; i < instructions_.size(); ++i) {
    const auto& ins = instructions_[i];
    if (ins.op == Opcode::JmpBack) {
      slots_[i] = 0;
      continue;
    }
    slots_[i] = static_cast<std::uint32_t>(std::lower_bound(regs.begin(), regs.end(), ins.reg) - regs.begin());
  }
}

std::string Program::disassemble() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < instructions_.size(); ++i) {
    if (i) os << "; ";
    os << to_string(instructions_[i]);
  }
  os << ']';
  return os.str();
}

DecodeResult decode(const Bitstring& bits, std::size_t pos) {
  BitReader in(bits, pos);
  auto fail = [&](const char* what) -> MalformedEncoding {
    return MalformedEncoding(std::string(what) + " at bit " + std::to_string(in.position()) + " of \"" +
                             bits.str() + "\"");
  };

  std::uint64_t count = 0;
  if (!in.read_gamma(count)) throw fail("incomplete instruction-count header");
  count -= 1;
  if (count > in.remaining()) throw fail("instruction count exceeds available bits");

  std::vector<Instruction> instructions;
  instructions.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    bool hi = false, lo = false;
    if (!in.read_bit(hi) || !in.read_bit(lo)) throw fail("incomplete opcode");
    Instruction ins;
    ins.op = static_cast<Opcode>((hi ? 2 : 0) | (lo ? 1 : 0));
    std::uint64_t v = 0;
    if (ins.op != Opcode::JmpBack) {
      if (!in.read_gamma(v)) throw fail("incomplete register operand");
      ins.reg = v - 1;
    }
    if (ins.op == Opcode::DecJz || ins.op == Opcode::JmpBack) {
      if (!in.read_gamma(v)) throw fail("incomplete jump offset");
      ins.offset = v;
    }
    instructions.push_back(ins);
  }
  DecodeResult result{Program(std::move(instructions)), in.position() - pos};
  return result;
}

Program parse_program(const Bitstring& bits) {
  auto decoded = decode(bits);
  if (decoded.consumed != bits.size())
    throw MalformedEncoding("trailing bits after program in \"" + bits.str() + "\"");
  return std::move(decoded.program);
}

// ---------------------------------------------------------------------------

bool PrefixDecoder::gamma_push(bool bit) noexcept {
  if (counting_zeros_) {
    if (!bit) {
      if (++zeros_ > 63) status_ = Status::Overflow;
      return false;
    }
    counting_zeros_ = false;
    value_ = 1;
    value_bits_left_ = zeros_;
  } else {
    value_ = (value_ << 1) | static_cast<std::uint64_t>(bit);
    --value_bits_left_;
  }
  if (value_bits_left_ != 0) return false;
  counting_zeros_ = true;
  zeros_ = 0;
  return true;
}

void PrefixDecoder::field_done() noexcept {
  // One instruction finished.
  if (--remaining_ == 0) {
    status_ = Status::Complete;
    return;
  }
  field_ = Field::Opcode;
  opcode_bits_ = 0;
  opcode_ = 0;
}

PrefixDecoder::Status PrefixDecoder::push(bool bit) noexcept {
  if (status_ != Status::NeedMore) return status_;
  ++length_;
  switch (field_) {
    case Field::Header:
      if (gamma_push(bit)) {
        remaining_ = value_ - 1;
        if (remaining_ == 0) {
          status_ = Status::Complete;
        } else {
          field_ = Field::Opcode;
        }
      }
      break;
    case Field::Opcode:
      opcode_ = static_cast<std::uint8_t>((opcode_ << 1) | (bit ? 1 : 0));
      if (++opcode_bits_ == 2) field_ = (opcode_ == 2) ? Field::Offset : Field::Register;
      break;
    case Field::Register:
      if (gamma_push(bit)) {
        if (opcode_ == 1) {
          field_ = Field::Offset;
        } else {
          field_done();
        }
      }
      break;
    case Field::Offset:
      if (gamma_push(bit)) field_done();
      break;
  }
  return status_;
}

// ---------------------------------------------------------------------------

namespace {

struct Machine {
  explicit Machine(const Program& p, const Bitstring& input)
      : program(p), regs(p.slot_count(), 0) {
    regs[0] = input.to_natural();
  }

  bool running() const noexcept {
    return pc >= 0 && pc < static_cast<std::int64_t>(program.instructions().size());
  }

  // Executes the instruction at pc. Reports the slot that was zeroed or found
  // zero, or -1.
  int step() noexcept {
    const auto i = static_cast<std::size_t>(pc);
    const auto& ins = program.instructions()[i];
    const auto s = program.slot(i);
    int touched = -1;
    switch (ins.op) {
      case Opcode::Inc:
        ++regs[s];
        ++pc;
        break;
      case Opcode::DecJz:
        if (regs[s] == 0) {
          pc += static_cast<std::int64_t>(ins.offset);
          touched = static_cast<int>(s);
        } else {
          --regs[s];
          ++pc;
        }
        break;
      case Opcode::JmpBack: pc -= static_cast<std::int64_t>(ins.offset); break;
      case Opcode::Zero:
        regs[s] = 0;
        ++pc;
        touched = static_cast<int>(s);
        break;
    }
    ++steps;
    return touched;
  }

  MachineVerdict halt() const {
    return {VerdictKind::Halted, Bitstring::from_natural(regs[0]), steps};
  }

  const Program& program;
  std::vector<Natural> regs;
  std::int64_t pc = 0;
  std::uint64_t steps = 0;
};

}  // namespace

MachineVerdict run(const Program& program, const Bitstring& input, std::uint64_t budget) {
  Machine m(program, input);
  while (m.running()) {
    if (m.steps >= budget) return {VerdictKind::BudgetExhausted, {}, m.steps};
    m.step();
  }
  return m.halt();
}

MachineVerdict oracle(const Program& program, const Bitstring& input, std::uint64_t budget) {
  Machine m(program, input);
  std::int64_t snap_pc = m.pc;
  std::vector<Natural> snap_regs = m.regs;
  std::vector<char> dirty(m.regs.size(), 0);
  std::uint64_t snap_time = 0;
  std::uint64_t power = 1;

  while (m.running()) {
    if (m.steps >= budget) return {VerdictKind::BudgetExhausted, {}, m.steps};
    if (const int touched = m.step(); touched >= 0) dirty[static_cast<std::size_t>(touched)] = 1;
    if (!m.running()) break;

    if (m.pc == snap_pc) {
      bool grows_safely = true;
      for (std::size_t s = 0; s < m.regs.size() && grows_safely; ++s) {
        if (m.regs[s] < snap_regs[s]) grows_safely = false;
        else if (m.regs[s] > snap_regs[s] && dirty[s]) grows_safely = false;
      }
      if (grows_safely) return {VerdictKind::ProvenNonhalting, {}, m.steps};
    }
    if (m.steps - snap_time == power) {
      snap_pc = m.pc;
      snap_regs = m.regs;
      std::fill(dirty.begin(), dirty.end(), 0);
      snap_time = m.steps;
      power *= 2;
    }
  }
  return m.halt();
}

Natural fitness(const MachineVerdict& verdict) noexcept {
  if (!verdict.halted()) return 0;
  return verdict.output.to_natural() + 1;
}

}  // namespace algnet::machine
