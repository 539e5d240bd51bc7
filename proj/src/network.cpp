#include "algnet/network.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace algnet::network {

using machine::VerdictKind;

Program sample_program(std::mt19937_64& rng, std::size_t max_bits) {
  for (;;) {
    machine::PrefixDecoder decoder;
    Bitstring bits;
    std::uint64_t word = 0;
    int left = 0;
    auto status = machine::PrefixDecoder::Status::NeedMore;
    while (status == machine::PrefixDecoder::Status::NeedMore && bits.size() < max_bits) {
      if (left == 0) {
        word = rng();
        left = 64;
      }
      const bool bit = word & 1;
      word >>= 1;
      --left;
      bits.push_back(bit);
      status = decoder.push(bit);
    }
    if (status == machine::PrefixDecoder::Status::Complete) return machine::parse_program(bits);
  }
}

std::vector<Program> sample_population(std::size_t n, std::uint64_t seed, std::size_t max_bits) {
  std::vector<Program> programs(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    auto rng = make_rng(seed, {static_cast<std::uint64_t>(i)});
    programs[static_cast<std::size_t>(i)] = sample_program(rng, max_bits);
  }
  return programs;
}

void Assembly::validate() const {
  const auto n = programs.size();
  if (graph.size() != n)
    throw ConfigMismatch("graph has " + std::to_string(graph.size()) + " vertices but the population has " +
                         std::to_string(n) + " nodes");
  if (node_of_vertex.size() != n) throw ConfigMismatch("b_j must map every vertex");
  std::vector<char> hit(n, 0);
  for (auto id : node_of_vertex) {
    if (id >= n || hit[id]) throw ConfigMismatch("b_j is not a bijection");
    hit[id] = 1;
  }
  if (n_cycles < 1) throw ConfigMismatch("at least one cycle is required");
  if (n_cycles < c0 + graph.instants() + 1)
    throw ConfigMismatch("n_cycles = " + std::to_string(n_cycles) + " is below c0 + |T| + 1 = " +
                         std::to_string(c0 + graph.instants() + 1));
}

Assembly assemble(tvg::Tvg graph, std::vector<Program> programs, std::size_t c0,
                  std::optional<std::size_t> n_cycles) {
  Assembly a;
  a.c0 = c0;
  a.n_cycles = n_cycles.value_or(c0 + graph.instants() + 1);
  a.node_of_vertex.resize(programs.size());
  for (NodeId i = 0; i < programs.size(); ++i) a.node_of_vertex[i] = i;
  a.graph = std::move(graph);
  a.programs = std::move(programs);
  a.validate();
  return a;
}

namespace {

Node evaluate_node(const Assembly& a, NodeId id, const Bitstring& w, std::uint64_t budget) {
  Node node;
  node.id = id;
  node.program = a.programs[id];
  node.verdict = machine::oracle(node.program, w, budget);
  node.first_fitness = machine::fitness(node.verdict);
  return node;
}

// Interval whose arcs feed cycle `cycle`, if any.
std::optional<std::size_t> interval_for(const Assembly& a, std::size_t cycle) {
  if (cycle < a.c0 + 2) return std::nullopt;
  const std::size_t k = cycle - a.c0 - 1;
  if (k > a.graph.intervals()) return std::nullopt;
  return k - 1;
}

std::optional<Bitstring> final_output(const RunParams& params, Natural x) {
  return machine::evaluate_final(params.s, x, params.w, params.labels, params.budget);
}

void check_advance(const Assembly& a, const CycleState& state) {
  if (state.cycle < 1 || state.cycle >= a.n_cycles)
    throw std::logic_error("cannot advance from cycle " + std::to_string(state.cycle) + " of " +
                           std::to_string(a.n_cycles));
}

RunRecord collect(const Assembly& a, std::vector<Node> nodes, const RunParams& params,
                  CycleState (*advance)(const Assembly&, const CycleState&, const RunParams&)) {
  RunRecord rec;
  const auto n = a.size();
  auto state = first_cycle(a, nodes);
  auto by_node = [&](const std::vector<Carried>& by_vertex) {
    std::vector<Carried> out(n);
    for (tvg::Vertex v = 0; v < n; ++v) out[a.node_of_vertex[v]] = by_vertex[v];
    return out;
  };
  while (state.cycle < a.n_cycles) {
    rec.carried.push_back(by_node(state.carried));
    state = advance(a, state, params);
  }
  rec.final_outputs.resize(n);
  rec.undecided.assign(n, 0);
  for (tvg::Vertex v = 0; v < n; ++v) {
    rec.final_outputs[a.node_of_vertex[v]] = state.outputs[v];
    rec.undecided[a.node_of_vertex[v]] = state.undecided[v];
  }
  for (const auto& node : nodes) {
    rec.x_max = std::max(rec.x_max, node.first_fitness);
    if (node.verdict.kind == VerdictKind::BudgetExhausted) ++rec.budget_exhausted;
  }
  rec.nodes = std::move(nodes);
  return rec;
}

}  // namespace

std::vector<Node> evaluate_nodes(const Assembly& a, const Bitstring& w, std::uint64_t budget) {
  std::vector<Node> nodes(a.size());
  const auto count = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < count; ++i)
    nodes[static_cast<std::size_t>(i)] = evaluate_node(a, static_cast<NodeId>(i), w, budget);
  return nodes;
}

CycleState first_cycle(const Assembly& a, const std::vector<Node>& nodes) {
  CycleState st;
  st.cycle = 1;
  const auto n = a.size();
  st.carried.resize(n);
  for (tvg::Vertex v = 0; v < n; ++v) {
    const auto id = a.node_of_vertex[v];
    st.carried[v] = {nodes[id].first_fitness, id};
  }
  if (a.n_cycles == 1) {
    st.outputs.resize(n);
    st.undecided.assign(n, 0);
    for (tvg::Vertex v = 0; v < n; ++v) st.outputs[v] = Bitstring::from_natural(st.carried[v].value);
  }
  return st;
}

Carried adopt_max(const Carried& own, const std::vector<Carried>& previous, const std::vector<tvg::Vertex>& in,
                  const std::vector<NodeId>& node_of_vertex) {
  Carried best = own;
  NodeId best_neighbor = 0;
  bool from_neighbor = false;
  for (tvg::Vertex u : in) {
    const auto& c = previous[u];
    const NodeId id = node_of_vertex[u];
    if (c.value > best.value || (from_neighbor && c.value == best.value && id < best_neighbor)) {
      best = c;
      best_neighbor = id;
      from_neighbor = true;
    }
  }
  return best;
}

CycleState sifp_cycle(const Assembly& a, const CycleState& state, const RunParams& params) {
  check_advance(a, state);
  CycleState next;
  next.cycle = state.cycle + 1;
  const auto n = static_cast<std::int64_t>(a.size());

  if (next.cycle == a.n_cycles) {
    next.carried = state.carried;
    next.outputs.resize(a.size());
    next.undecided.assign(a.size(), 0);
    // After diffusion most vertices hold the same x; evaluate s once per value.
    std::vector<Natural> values;
    values.reserve(a.size());
    for (const auto& c : state.carried) values.push_back(c.value);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<std::optional<Bitstring>> results(values.size());
    const auto distinct = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < distinct; ++i)
      results[static_cast<std::size_t>(i)] = final_output(params, values[static_cast<std::size_t>(i)]);
    for (tvg::Vertex v = 0; v < a.size(); ++v) {
      const auto it = std::lower_bound(values.begin(), values.end(), state.carried[v].value);
      const auto& r = results[static_cast<std::size_t>(it - values.begin())];
      next.outputs[v] = r.value_or(Bitstring{});
      next.undecided[v] = !r.has_value();
    }
    return next;
  }

  const auto interval = interval_for(a, next.cycle);
  if (!interval) {
    next.carried = state.carried;
    return next;
  }
  next.carried.resize(a.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto v = static_cast<tvg::Vertex>(i);
    next.carried[v] = adopt_max(state.carried[v], state.carried, a.graph.in_neighbors(v, *interval), a.node_of_vertex);
  }
  return next;
}

RunRecord run_networked(const Assembly& a, const RunParams& params) {
  a.validate();
  return collect(a, evaluate_nodes(a, params.w, params.budget), params, &sifp_cycle);
}

namespace serial {

std::vector<Node> evaluate_nodes(const Assembly& a, const Bitstring& w, std::uint64_t budget) {
  std::vector<Node> nodes;
  nodes.reserve(a.size());
  for (NodeId i = 0; i < a.size(); ++i) nodes.push_back(evaluate_node(a, i, w, budget));
  return nodes;
}

CycleState sifp_cycle(const Assembly& a, const CycleState& state, const RunParams& params) {
  check_advance(a, state);
  CycleState next;
  next.cycle = state.cycle + 1;
  if (next.cycle == a.n_cycles) {
    next.carried = state.carried;
    for (const auto& c : state.carried) {
      const auto r = final_output(params, c.value);
      next.outputs.push_back(r.value_or(Bitstring{}));
      next.undecided.push_back(!r.has_value());
    }
    return next;
  }
  const auto interval = interval_for(a, next.cycle);
  next.carried = state.carried;
  if (!interval) return next;
  for (tvg::Vertex v = 0; v < a.size(); ++v)
    next.carried[v] = adopt_max(state.carried[v], state.carried, a.graph.in_neighbors(v, *interval), a.node_of_vertex);
  return next;
}

RunRecord run_networked(const Assembly& a, const RunParams& params) {
  a.validate();
  return collect(a, serial::evaluate_nodes(a, params.w, params.budget), params, &serial::sifp_cycle);
}

}  // namespace serial

std::vector<Bitstring> isolated_trace(const Program& p, const Bitstring& w, std::size_t cycles,
                                      std::uint64_t budget) {
  std::vector<Bitstring> trace;
  trace.reserve(cycles);
  Bitstring current = w;
  bool killed = false;
  for (std::size_t k = 0; k < cycles; ++k) {
    if (!killed) {
      const auto v = machine::oracle(p, current, budget);
      if (v.halted()) {
        current = v.output;
      } else {
        killed = true;
        current = Bitstring{};
      }
    }
    trace.push_back(current);
  }
  return trace;
}

Bitstring run_isolated(const Program& p, const Bitstring& w, std::size_t cycles, std::uint64_t budget) {
  if (cycles < 1) throw std::invalid_argument("run_isolated needs at least one cycle");
  return isolated_trace(p, w, cycles, budget).back();
}

std::vector<Bitstring> isolated_outputs(const Assembly& a, const Bitstring& w, std::uint64_t budget) {
  std::vector<Bitstring> out(a.size());
  const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = run_isolated(a.programs[static_cast<std::size_t>(i)], w, a.n_cycles, budget);
  return out;
}

Bitstring target_output(const RunParams& params, Natural x_max) {
  if (params.s.kind == FinalProgram::Kind::Halt) {
    Program w_program;
    try {
      w_program = machine::parse_program(params.w);
    } catch (const machine::MalformedEncoding&) {
      return params.labels.loops;
    }
    const auto v = machine::oracle(w_program, Bitstring{}, params.budget);
    if (v.kind == VerdictKind::BudgetExhausted)
      throw std::runtime_error("the oracle cannot decide w = " + params.w.display() + " within the budget");
    return v.halted() ? params.labels.halts : params.labels.loops;
  }
  const auto out = final_output(params, x_max);
  if (!out) throw std::runtime_error("s does not halt within the budget on the population maximum");
  return *out;
}

CentralReport find_central_node(const Assembly& a, const RunParams& params) {
  a.validate();
  if (a.graph.instants() == 0) throw tvg::InfiniteDiameter("the graph has no instants");
  const auto n = a.size();
  const auto arrival = tvg::arrival_matrix(a.graph, 0);
  if (tvg::temporal_diffusion_diameter(arrival, n) == tvg::kUnreached)
    throw tvg::InfiniteDiameter("temporal diffusion diameter is infinite");

  const auto full = run_networked(a, params);
  CentralReport rep;
  rep.f_w = target_output(params, full.x_max);
  rep.reverse_reach = tvg::reverse_reach_all(arrival, n);
  rep.qualifying.resize(n);
  rep.excluded.assign(n, 0);

  std::optional<tvg::Vertex> best;
  for (tvg::Vertex v = 0; v < n; ++v) {
    rep.qualifying[v] = a.c0 + rep.reverse_reach[v] + 2;
    const auto trace = isolated_trace(a.programs[a.node_of_vertex[v]], params.w, rep.qualifying[v] - 1, params.budget);
    rep.excluded[v] = std::find(trace.begin(), trace.end(), rep.f_w) != trace.end();
    if (rep.excluded[v]) continue;
    if (!best || rep.reverse_reach[v] < rep.reverse_reach[*best]) best = v;
  }
  if (!best) throw NoCentralNode("every node's isolated run already computes f(w)");

  rep.vertex = *best;
  rep.node = a.node_of_vertex[*best];
  rep.c_min = rep.qualifying[*best];

  // Trimmed network: instants t_0 .. t_{reverse_reach}, c0 + |T'| + 1 cycles.
  Assembly trimmed = a;
  trimmed.graph = a.graph.trimmed(rep.reverse_reach[*best] + 1);
  trimmed.n_cycles = rep.c_min;
  const auto cut = run_networked(trimmed, params);
  rep.verified = cut.final_outputs[rep.node] == rep.f_w;

  // A final cycle after c - 1 cycles sees the carried value of the full run.
  rep.observed_earliest = rep.c_min;
  for (std::size_t c = std::max<std::size_t>(2, a.c0 + 1); c < rep.c_min; ++c) {
    const auto out = final_output(params, full.carried_after(c - 1, rep.node));
    if (out && *out == rep.f_w) {
      rep.observed_earliest = c;
      break;
    }
  }
  return rep;
}

SweepTrial halting_trial(const SweepSetup& setup, const machine::BBTable& bb, std::size_t n, std::size_t trial,
                         const Bitstring& w, std::uint64_t seed) {
  SweepTrial t;
  t.n = n;
  t.trial = trial;
  t.w = w;
  const auto gen = tvg::gen_small_diameter(setup.family, n, derive_seed(seed, {n, trial, 2}));
  t.diameter = gen.diameter;
  auto a = assemble(gen.graph, sample_population(n, derive_seed(seed, {n, trial, 1}), setup.max_bits), setup.c0);
  RunParams params{w, FinalProgram::halt(), setup.labels, setup.budget};
  const auto rec = run_networked(a, params);
  t.x_max = rec.x_max;

  t.l_w = setup.time_overhead + w.size();
  if (t.l_w <= bb.max_bits()) {
    if (const auto v = bb.exact(t.l_w)) {
      t.bb_resolved = true;
      t.bb_at_l_w = *v;
    }
  }
  t.condition = t.bb_resolved && t.x_max >= t.bb_at_l_w;

  Bitstring expected;
  try {
    const auto v = machine::oracle(machine::parse_program(w), Bitstring{}, setup.budget);
    t.w_decided = v.kind != VerdictKind::BudgetExhausted;
    t.w_halts = v.halted();
  } catch (const machine::MalformedEncoding&) {
    t.w_decided = true;
  }
  if (t.w_decided) {
    expected = t.w_halts ? setup.labels.halts : setup.labels.loops;
    for (const auto& out : rec.final_outputs) t.correct += out == expected;
  }
  t.all_correct = t.w_decided && t.correct == n;
  return t;
}

}  // namespace algnet::network
