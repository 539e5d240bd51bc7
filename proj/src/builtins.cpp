#include "algnet/builtins.hpp"

namespace algnet::machine {

std::string to_string(Builtin b) {
  switch (b) {
    case Builtin::Time: return "p_T";
    case Builtin::Successor: return "p_+1";
    case Builtin::Halt: return "p_halt";
    case Builtin::Identity: return "identity";
  }
  return "?";
}

std::optional<Builtin> builtin_from_string(const std::string& name) {
  for (auto b : {Builtin::Time, Builtin::Successor, Builtin::Halt, Builtin::Identity}) {
    if (to_string(b) == name) return b;
  }
  if (name == "halt") return Builtin::Halt;
  return std::nullopt;
}

std::size_t nominal_length(Builtin b) noexcept {
  switch (b) {
    case Builtin::Time: return kTimeLength;
    case Builtin::Successor: return kSuccessorLength;
    case Builtin::Halt: return kHaltLength;
    case Builtin::Identity: return kIdentityLength;
  }
  return 0;
}

MachineVerdict apply_time(const Program& p, std::uint64_t budget) {
  auto v = oracle(p, Bitstring{}, budget);
  if (v.halted()) v.output = Bitstring::from_natural(v.steps);
  return v;
}

MachineVerdict apply_successor(const MachineVerdict& inner) {
  auto v = inner;
  if (v.halted()) v.output = Bitstring::from_natural(v.output.to_natural() + 1);
  return v;
}

Bitstring halt_input(Natural n, const Bitstring& program_bits) {
  Bitstring out;
  append_gamma_wide(out, n + 1);
  out += program_bits;
  return out;
}

std::optional<Bitstring> p_halt(Natural n, const Program& p, const HaltLabels& labels, std::uint64_t budget) {
  // n + 1 steps decide "halted within n"; the oracle may settle it sooner.
  const Natural bound = n + 1;
  const bool capped = bound > budget;
  const auto limit = capped ? budget : static_cast<std::uint64_t>(bound);
  const auto v = oracle(p, Bitstring{}, limit);
  if (v.halted()) return (static_cast<Natural>(v.steps) <= n) ? labels.halts : labels.loops;
  if (v.kind == VerdictKind::ProvenNonhalting) return labels.loops;
  if (capped) return std::nullopt;
  return labels.loops;
}

std::optional<Bitstring> p_halt(const Bitstring& input, const HaltLabels& labels, std::uint64_t budget) {
  BitReader in(input);
  Natural header = 0;
  if (!in.read_gamma_wide(header)) return labels.loops;
  try {
    const auto program = parse_program(input.substr(in.position()));
    return p_halt(header - 1, program, labels, budget);
  } catch (const MalformedEncoding&) {
    return labels.loops;
  }
}

std::string FinalProgram::describe() const {
  switch (kind) {
    case Kind::Halt: return "p_halt";
    case Kind::Identity: return "identity";
    case Kind::Custom: return custom.encoding().str();
  }
  return "?";
}

std::optional<Bitstring> evaluate_final(const FinalProgram& s, Natural x, const Bitstring& w,
                                        const HaltLabels& labels, std::uint64_t budget) {
  switch (s.kind) {
    case FinalProgram::Kind::Identity: return Bitstring::from_natural(x);
    case FinalProgram::Kind::Halt: {
      try {
        return p_halt(x, parse_program(w), labels, budget);
      } catch (const MalformedEncoding&) {
        return labels.loops;
      }
    }
    case FinalProgram::Kind::Custom: {
      const auto input = halt_input(x, w);
      if (input.size() > 127) return std::nullopt;
      const auto v = run(s.custom, input, budget);
      if (!v.halted()) return std::nullopt;
      return v.output;
    }
  }
  return std::nullopt;
}

Bitstring concat_selfdelim(const std::vector<Bitstring>& parts) {
  Bitstring out;
  for (const auto& part : parts) {
    append_gamma(out, part.size() + 1);
    out += part;
  }
  return out;
}

std::vector<Bitstring> split_selfdelim(const Bitstring& bits) {
  std::vector<Bitstring> parts;
  BitReader in(bits);
  while (!in.exhausted()) {
    std::uint64_t len = 0;
    if (!in.read_gamma(len)) throw MalformedEncoding("truncated tuple header in \"" + bits.str() + "\"");
    len -= 1;
    if (len > in.remaining()) throw MalformedEncoding("truncated tuple part in \"" + bits.str() + "\"");
    parts.push_back(bits.substr(in.position(), len));
    bool skip = false;
    for (std::uint64_t i = 0; i < len; ++i) in.read_bit(skip);
  }
  return parts;
}

}  // namespace algnet::machine
