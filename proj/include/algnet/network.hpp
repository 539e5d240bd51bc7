#pragma once

// Algorithmic networks of sampled programs running the synergistic
// imitation-of-the-fittest protocol over a time-varying graph.
//
// Cycle numbering (1-based), for n cycles, c0 warm-up cycles and |T| instants:
//   1                  every node runs its program on w; carried = (own fitness, self)
//   2 .. c0 + 1        isolated repetition, carried unchanged
//   c0 + 1 + k         k = 1 .. |T| - 1: adopt the max over self and the
//                      in-neighbours along the arcs t_{k-1} -> t_k
//   .. n - 1           no arcs left, carried unchanged
//   n                  final output U(s o x o w) with x the carried value
// With n = 1 (c0 = 0, |T| = 0) the single cycle outputs string(fitness).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "algnet/builtins.hpp"
#include "algnet/busy_beaver.hpp"
#include "algnet/machine.hpp"
#include "algnet/rng.hpp"
#include "algnet/tvg.hpp"

namespace algnet::network {

using machine::FinalProgram;
using machine::HaltLabels;
using machine::MachineVerdict;
using machine::Program;
using NodeId = std::uint32_t;

class ConfigMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};
class NoCentralNode : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxBits = 4096;

// Fair bits from rng fed to the decoder; redrawn when the program would be
// longer than max_bits.
Program sample_program(std::mt19937_64& rng, std::size_t max_bits);
// Node i draws from its own stream derived from (seed, i).
std::vector<Program> sample_population(std::size_t n, std::uint64_t seed, std::size_t max_bits = kDefaultMaxBits);

struct Node {
  NodeId id = 0;
  Program program;
  MachineVerdict verdict;  // oracle(program, w, budget)
  Natural first_fitness = 0;
};

struct Assembly {
  tvg::Tvg graph;
  std::vector<Program> programs;        // indexed by node id
  std::vector<NodeId> node_of_vertex;   // b_j
  std::size_t c0 = 0;
  std::size_t n_cycles = 1;

  std::size_t size() const noexcept { return programs.size(); }
  // throws ConfigMismatch
  void validate() const;
};

// Identity b_j and n_cycles = c0 + |T| + 1 unless given.
Assembly assemble(tvg::Tvg graph, std::vector<Program> programs, std::size_t c0 = 0,
                  std::optional<std::size_t> n_cycles = std::nullopt);

struct Carried {
  Natural value = 0;
  NodeId owner = 0;

  friend bool operator==(const Carried&, const Carried&) = default;
};

struct CycleState {
  std::size_t cycle = 0;           // cycles completed
  std::vector<Carried> carried;    // by vertex
  std::vector<Bitstring> outputs;  // by vertex; set by the last cycle
  std::vector<char> undecided;     // by vertex; final evaluation hit the budget
};

struct RunParams {
  Bitstring w;
  FinalProgram s;
  HaltLabels labels;
  std::uint64_t budget = 100000;
};

// Cycle 1 for every node: verdicts and fitness, indexed by node id.
std::vector<Node> evaluate_nodes(const Assembly& a, const Bitstring& w, std::uint64_t budget);
namespace serial {
std::vector<Node> evaluate_nodes(const Assembly& a, const Bitstring& w, std::uint64_t budget);
}

CycleState first_cycle(const Assembly& a, const std::vector<Node>& nodes);
// Advances one cycle. Requires state.cycle >= 1 and state.cycle < n_cycles.
CycleState sifp_cycle(const Assembly& a, const CycleState& state, const RunParams& params);
namespace serial {
CycleState sifp_cycle(const Assembly& a, const CycleState& state, const RunParams& params);
}

// Clause (c) update for one vertex.
Carried adopt_max(const Carried& own, const std::vector<Carried>& previous, const std::vector<tvg::Vertex>& in,
                  const std::vector<NodeId>& node_of_vertex);

struct RunRecord {
  std::vector<Node> nodes;                     // by node id
  std::vector<std::vector<Carried>> carried;   // [cycle - 1][node id], cycles 1 .. n - 1
  std::vector<Bitstring> final_outputs;        // by node id
  std::vector<char> undecided;                 // by node id
  Natural x_max = 0;                           // max first-cycle fitness
  std::size_t budget_exhausted = 0;            // first-cycle verdicts without a decision

  // carried value of a node after `cycle` cycles, 1 <= cycle < n
  Natural carried_after(std::size_t cycle, NodeId id) const { return carried.at(cycle - 1).at(id).value; }
};

RunRecord run_networked(const Assembly& a, const RunParams& params);
namespace serial {
RunRecord run_networked(const Assembly& a, const RunParams& params);
}

// out_1 = U(p o w), out_{k+1} = U(p o out_k). A cycle that does not halt
// leaves the zero label (empty string) from then on.
Bitstring run_isolated(const Program& p, const Bitstring& w, std::size_t cycles, std::uint64_t budget);
// Outputs after 1 .. cycles cycles.
std::vector<Bitstring> isolated_trace(const Program& p, const Bitstring& w, std::size_t cycles,
                                      std::uint64_t budget);

// run_isolated for every node over the assembly's n_cycles, by node id.
std::vector<Bitstring> isolated_outputs(const Assembly& a, const Bitstring& w, std::uint64_t budget);

// f(w): what every node outputs once the population maximum has reached it.
// For p_halt it is the oracle's label for w, independent of x; throws when the
// oracle cannot decide w within budget.
Bitstring target_output(const RunParams& params, Natural x_max);

struct CentralReport {
  NodeId node = 0;
  tvg::Vertex vertex = 0;
  std::size_t c_min = 0;          // c0 + reverse_reach + 2
  std::size_t observed_earliest = 0;  // fewest cycles at which the trimmed run already output f(w)
  bool verified = false;          // trimmed run at c_min outputs f(w)
  Bitstring f_w;
  std::vector<tvg::Steps> reverse_reach;    // by vertex
  std::vector<std::size_t> qualifying;      // by vertex, c0 + reverse_reach + 2
  std::vector<char> excluded;               // by vertex, isolated run reached f(w) earlier
};

// Highest time-reachability centrality among nodes whose isolated run does
// not produce f(w) before their qualifying cycle count; lowest vertex on ties.
CentralReport find_central_node(const Assembly& a, const RunParams& params);

struct SweepTrial {
  std::size_t n = 0;
  std::size_t trial = 0;
  Bitstring w;
  tvg::Steps diameter = 0;
  Natural x_max = 0;
  std::size_t l_w = 0;
  bool bb_resolved = false;
  Natural bb_at_l_w = 0;
  bool condition = false;   // resolved and x_max >= BB(L_w)
  bool w_decided = false;   // oracle classified w within budget
  bool w_halts = false;
  std::size_t correct = 0;  // nodes with the oracle-correct label
  bool all_correct = false;
};

struct SweepSetup {
  tvg::Family family = tvg::Family::ReplicatedRandomRegular;
  std::size_t c0 = 0;
  std::size_t max_bits = kDefaultMaxBits;
  std::uint64_t budget = 100000;
  HaltLabels labels;
  std::size_t time_overhead = machine::kSuccessorLength + machine::kTimeLength;
};

// One halting-sweep trial; streams derive from (seed, n, trial).
SweepTrial halting_trial(const SweepSetup& setup, const machine::BBTable& bb, std::size_t n,
                         std::size_t trial, const Bitstring& w, std::uint64_t seed);

}  // namespace algnet::network
