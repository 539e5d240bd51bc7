#include <gtest/gtest.h>

#include <cmath>

#include "algnet/network.hpp"
#include "support/oracles.hpp"

using namespace algnet;
using namespace algnet::network;
using machine::Instruction;

namespace {

tvg::Tvg complete(std::size_t n, std::size_t instants) {
  tvg::Tvg g(n, instants);
  for (tvg::Vertex u = 0; u < n; ++u)
    for (tvg::Vertex v = 0; v < n; ++v)
      if (u != v) g.add_static_arc(u, v);
  return g;
}

Program constant_program(Natural value) {
  std::vector<Instruction> body{Instruction::zero(0)};
  for (Natural i = 0; i < value; ++i) body.push_back(Instruction::inc(0));
  return Program(body);
}

const Program kLoop({Instruction::decjz(0, 1), Instruction::jmpback(1)});

RunParams halt_params(const Bitstring& w) {
  return {w, FinalProgram::halt(), HaltLabels{Bitstring("1011"), Bitstring("0100")}, 100000};
}

void expect_same(const RunRecord& a, const RunRecord& b) {
  ASSERT_EQ(a.nodes.size(), b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    EXPECT_EQ(a.nodes[i].verdict, b.nodes[i].verdict);
    EXPECT_EQ(a.nodes[i].first_fitness, b.nodes[i].first_fitness);
  }
  EXPECT_EQ(a.carried, b.carried);
  EXPECT_EQ(a.final_outputs, b.final_outputs);
  EXPECT_EQ(a.undecided, b.undecided);
  EXPECT_EQ(a.x_max, b.x_max);
  EXPECT_EQ(a.budget_exhausted, b.budget_exhausted);
}

}  // namespace

TEST(Sampling, EmptyProgramHasProbabilityOneHalf) {
  auto rng = make_rng(99, {1});
  const int draws = 100000;
  int empty = 0;
  for (int i = 0; i < draws; ++i) empty += sample_program(rng, kDefaultMaxBits).length() == 1;
  const double p = static_cast<double>(empty) / draws;
  EXPECT_NEAR(p, 0.5, 3.0 * std::sqrt(0.25 / draws));
}

TEST(Sampling, LengthDistributionFollowsKraftWeights) {
  // P(|p| = 6) is the number of 6-bit programs times 2^-6.
  const auto six = machine::enumerate_programs(6).size() - machine::enumerate_programs(5).size();
  const double expected = static_cast<double>(six) / 64.0;
  auto rng = make_rng(3, {2});
  const int draws = 100000;
  int hits = 0;
  for (int i = 0; i < draws; ++i) hits += sample_program(rng, kDefaultMaxBits).length() == 6;
  EXPECT_NEAR(static_cast<double>(hits) / draws, expected, 3.0 * std::sqrt(expected * (1 - expected) / draws));
}

TEST(Sampling, DeterministicAndValid) {
  const auto a = sample_population(200, 42, 256);
  const auto b = sample_population(200, 42, 256);
  ASSERT_EQ(a, b);
  EXPECT_NE(a, sample_population(200, 43, 256));
  for (const auto& p : a) {
    EXPECT_LE(p.length(), 256u);
    EXPECT_TRUE(oracles::ref_is_program(p.encoding().str()));
  }
  // Node i's program does not depend on the population size.
  const auto c = sample_population(50, 42, 256);
  EXPECT_TRUE(std::equal(c.begin(), c.end(), a.begin()));
}

TEST(Assembly, Validation) {
  EXPECT_THROW(assemble(complete(3, 2), std::vector<Program>(2)), ConfigMismatch);
  EXPECT_THROW(assemble(complete(3, 2), std::vector<Program>(3), 1, 3), ConfigMismatch);
  EXPECT_NO_THROW(assemble(complete(3, 2), std::vector<Program>(3), 1, 4));
  auto a = assemble(complete(3, 2), std::vector<Program>(3));
  EXPECT_EQ(a.n_cycles, 3u);
  a.node_of_vertex = {0, 0, 2};
  EXPECT_THROW(a.validate(), ConfigMismatch);
}

TEST(Sifp, SingleCycleOutputsFitness) {
  const auto a = assemble(tvg::Tvg(1, 0), {Program()});
  ASSERT_EQ(a.n_cycles, 1u);
  const auto rec = run_networked(a, halt_params(Bitstring()));
  ASSERT_EQ(rec.final_outputs.size(), 1u);
  EXPECT_EQ(rec.final_outputs[0], Bitstring::from_natural(1));
}

TEST(Sifp, AdoptMax) {
  const std::vector<NodeId> id{0, 1, 2, 3};
  const std::vector<Carried> prev{{4, 0}, {3, 1}, {5, 2}, {5, 3}};
  EXPECT_EQ(adopt_max(prev[0], prev, {1, 2}, id), (Carried{5, 2}));
  // Equal values: own owner first, then the lowest neighbour id.
  EXPECT_EQ(adopt_max(prev[2], prev, {3}, id), (Carried{5, 2}));
  EXPECT_EQ(adopt_max(prev[0], prev, {3, 2}, id), (Carried{5, 2}));
  EXPECT_EQ(adopt_max(prev[1], prev, {}, id), (Carried{3, 1}));
}

TEST(Sifp, FinalCycleWithHaltingProgram) {
  // The empty program echoes w, so x_max = natural(w) + 1, well above the
  // single step INC R0 needs; every node answers h.
  const auto w = Bitstring("010001");
  auto a = assemble(complete(4, 2), {constant_program(26), Program(), kLoop, Program()});
  const auto params = halt_params(w);
  const auto rec = run_networked(a, params);
  EXPECT_EQ(rec.x_max, w.to_natural() + 1);
  EXPECT_EQ(rec.nodes[0].first_fitness, Natural{27});
  for (const auto& out : rec.final_outputs) EXPECT_EQ(out, params.labels.halts);
  EXPECT_EQ(target_output(params, rec.x_max), params.labels.halts);
  EXPECT_EQ(rec.nodes[2].first_fitness, Natural{0});
}

TEST(Sifp, IdentityFinalProgramOutputsMax) {
  const auto gen = tvg::gen_small_diameter(tvg::Family::StarBroadcast, 12, 1);
  auto a = assemble(gen.graph, sample_population(12, 5, 64));
  RunParams params{Bitstring("1"), FinalProgram::identity(), {}, 100000};
  const auto rec = run_networked(a, params);
  for (const auto& out : rec.final_outputs) EXPECT_EQ(out, Bitstring::from_natural(rec.x_max));
}

TEST(Sifp, StarDiffusesWithinItsDiameter) {
  const auto gen = tvg::gen_small_diameter(tvg::Family::StarBroadcast, 9, 1);
  auto a = assemble(gen.graph, sample_population(9, 8, 64));
  const auto rec = run_networked(a, halt_params(Bitstring("1")));
  for (NodeId i = 0; i < 9; ++i) EXPECT_EQ(rec.carried_after(1 + gen.diameter, i), rec.x_max);
}

TEST(Sifp, DiffusionCompletenessAndMonotoneCarriedValues) {
  std::mt19937_64 rng(1234);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = oracles::random_tvg(rng, 10, 6, 0.35);
    const auto d = tvg::temporal_diffusion_diameter(g, 0);
    const std::size_t c0 = rng() % 3;
    auto a = assemble(g, sample_population(g.size(), rng(), 64), c0);
    const auto rec = run_networked(a, halt_params(Bitstring("1")));
    for (NodeId id = 0; id < a.size(); ++id)
      for (std::size_t c = 2; c < a.n_cycles; ++c) ASSERT_GE(rec.carried_after(c, id), rec.carried_after(c - 1, id));
    if (d == tvg::kUnreached) continue;
    ++checked;
    for (NodeId id = 0; id < a.size(); ++id) ASSERT_EQ(rec.carried_after(c0 + d + 1, id), rec.x_max);
    for (const auto& out : rec.final_outputs) ASSERT_EQ(out, rec.final_outputs.front());
  }
  EXPECT_GT(checked, 30);
}

TEST(Sifp, SerialAndParallelKernelsAgree) {
  for (auto f : {tvg::Family::StarBroadcast, tvg::Family::ReplicatedHypercube, tvg::Family::ReplicatedRandomRegular}) {
    const auto gen = tvg::gen_small_diameter(f, 70, 4);
    auto a = assemble(gen.graph, sample_population(70, 17, 512), 1);
    const auto params = halt_params(Bitstring("0100101"));
    const auto nodes = evaluate_nodes(a, params.w, params.budget);
    const auto snodes = serial::evaluate_nodes(a, params.w, params.budget);
    for (std::size_t i = 0; i < nodes.size(); ++i) ASSERT_EQ(nodes[i].verdict, snodes[i].verdict);
    auto state = first_cycle(a, nodes);
    auto sstate = state;
    while (state.cycle < a.n_cycles) {
      state = sifp_cycle(a, state, params);
      sstate = serial::sifp_cycle(a, sstate, params);
      ASSERT_EQ(state.carried, sstate.carried);
      ASSERT_EQ(state.outputs, sstate.outputs);
    }
    expect_same(run_networked(a, params), serial::run_networked(a, params));
  }
}

TEST(Sifp, RunIsDeterministic) {
  const auto gen = tvg::gen_small_diameter(tvg::Family::ReplicatedRandomRegular, 40, 6);
  const auto params = halt_params(Bitstring("1"));
  const auto r1 = run_networked(assemble(gen.graph, sample_population(40, 6, 512)), params);
  const auto r2 = run_networked(assemble(gen.graph, sample_population(40, 6, 512)), params);
  expect_same(r1, r2);
}

TEST(Isolated, Examples) {
  EXPECT_EQ(run_isolated(Program(), Bitstring("0110"), 5, 100), Bitstring("0110"));
  const Program inc({Instruction::inc(0)});
  EXPECT_EQ(run_isolated(inc, Bitstring(), 2, 100), Bitstring("1"));
  EXPECT_EQ(run_isolated(kLoop, Bitstring("1"), 3, 100), Bitstring());
  const auto trace = isolated_trace(inc, Bitstring(), 4, 100);
  ASSERT_EQ(trace.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(trace[k].to_natural(), Natural{k + 1});
}

TEST(Isolated, KilledCycleStaysAtZeroLabel) {
  // Outputs "0" on input 0 and loops otherwise:
  // 0: DECJZ R0 +3; 1: INC R0; 2: JMPBACK 2; 3: INC R0
  const Program p({Instruction::decjz(0, 3), Instruction::inc(0), Instruction::jmpback(2), Instruction::inc(0)});
  EXPECT_EQ(run_isolated(p, Bitstring(), 1, 100), Bitstring("0"));
  const auto trace = isolated_trace(p, Bitstring("1"), 3, 100);
  for (const auto& out : trace) EXPECT_EQ(out, Bitstring());
}

TEST(TargetOutput, UndecidableInputThrows) {
  // A program whose halting needs more than the budget.
  const auto w = Program(std::vector<Instruction>(30, Instruction::inc(0))).encoding();
  RunParams params{w, FinalProgram::halt(), {}, 10};
  EXPECT_THROW(target_output(params, 0), std::runtime_error);
  params.w = Bitstring("0");
  EXPECT_EQ(target_output(params, 0), params.labels.loops);
}

TEST(CentralNode, Star) {
  const auto gen = tvg::gen_small_diameter(tvg::Family::StarBroadcast, 7, 1);
  for (std::size_t c0 : {0u, 2u}) {
    auto a = assemble(gen.graph, std::vector<Program>(7, Program({Instruction::zero(0)})), c0);
    const auto rep = find_central_node(a, halt_params(Bitstring("010001")));
    EXPECT_EQ(rep.vertex, 0u);
    EXPECT_EQ(rep.c_min, c0 + 3);
    EXPECT_TRUE(rep.verified);
    EXPECT_LE(rep.observed_earliest, rep.c_min);
    for (tvg::Vertex v = 1; v < 7; ++v) EXPECT_EQ(rep.qualifying[v], c0 + 4);
  }
}

TEST(CentralNode, CompleteGraphPicksLowestQualifyingId) {
  const auto params = halt_params(Bitstring("010001"));
  std::vector<Program> programs(5, Program({Instruction::zero(0)}));
  auto a = assemble(complete(5, 2), programs);
  auto rep = find_central_node(a, params);
  EXPECT_EQ(rep.node, 0u);
  EXPECT_EQ(rep.c_min, 3u);

  // Node 0 outputs h on its own, so it is excluded.
  programs[0] = constant_program(Bitstring("1011").to_natural());
  a = assemble(complete(5, 2), programs);
  rep = find_central_node(a, params);
  EXPECT_TRUE(rep.excluded[0]);
  EXPECT_EQ(rep.node, 1u);

  std::fill(programs.begin(), programs.end(), constant_program(Bitstring("1011").to_natural()));
  EXPECT_THROW(find_central_node(assemble(complete(5, 2), programs), params), NoCentralNode);
}

TEST(HaltingTrial, ConditionImpliesCorrectness) {
  const auto bb = machine::enumerate_bb(16, 100000);
  SweepSetup setup;
  setup.max_bits = 512;
  std::size_t conditioned = 0, trial = 0;
  for (const auto& w : machine::enumerate_programs(8)) {
    const auto t = halting_trial(setup, bb, 32, trial++, w.encoding(), 3);
    ASSERT_TRUE(t.w_decided);
    if (t.condition) {
      ++conditioned;
      ASSERT_TRUE(t.all_correct) << w.disassemble();
      ASSERT_EQ(t.correct, 32u);
    }
  }
  EXPECT_GT(conditioned, 0u);
}
