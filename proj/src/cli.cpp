#include "algnet/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "algnet/builtins.hpp"
#include "algnet/busy_beaver.hpp"
#include "algnet/measures.hpp"
#include "algnet/network.hpp"
#include "algnet/rng.hpp"
#include "algnet/tvg.hpp"
#include "json.hpp"

namespace algnet::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError(key + ": expected a non-negative integer, got \"" + v + "\"");
  try {
    return std::stoull(v);
  } catch (const std::out_of_range&) {
    throw ValidationError(key + ": value out of range: " + v);
  }
}

std::vector<std::size_t> parse_list(const std::string& key, const std::string& v) {
  std::vector<std::size_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_u64(key, trim(item)));
  if (out.empty()) throw ValidationError(key + ": empty list");
  return out;
}

Bitstring parse_bits(const std::string& key, const std::string& v) {
  if (v == "eps") return Bitstring{};
  if (v.find_first_not_of("01") != std::string::npos)
    throw ValidationError(key + ": expected a bitstring of 0/1 or \"eps\", got \"" + v + "\"");
  return Bitstring(v);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError(key + ": expected true/false, got \"" + v + "\"");
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string bits_value(const Bitstring& b) { return b.empty() ? "eps" : b.str(); }

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

json natural_json(Natural n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(n);
  return to_decimal(n);
}

json steps_json(tvg::Steps s) {
  if (s == tvg::kUnreached) return "inf";
  return s;
}

std::string csv_header(const ExperimentConfig& cfg) {
  return "# seed=" + std::to_string(cfg.seed) + " fingerprint=" + cfg.fingerprint() + "\n";
}

json stamp(const ExperimentConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["fingerprint"] = cfg.fingerprint();
  return j;
}

fs::path prepare_out(const ExperimentConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + cfg.out.string() + ": " + ec.message());
  return cfg.out;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << content;
  if (!os) throw std::runtime_error("write failed: " + p.string());
}

machine::FinalProgram final_program(const ExperimentConfig& cfg) {
  if (cfg.s == "p_halt" || cfg.s == "halt") return machine::FinalProgram::halt();
  if (cfg.s == "identity") return machine::FinalProgram::identity();
  return machine::FinalProgram::program(machine::parse_program(Bitstring(cfg.s)));
}

network::RunParams run_params(const ExperimentConfig& cfg) {
  return {cfg.w, final_program(cfg), {cfg.h, cfg.h_bar}, cfg.budget};
}

struct Built {
  network::Assembly assembly;
  tvg::Steps diameter = 0;
  std::uint64_t graph_seed = 0;
};

// Trial t of size n uses the same streams as halting_trial.
tvg::Tvg graph_for(const ExperimentConfig& cfg, std::size_t n, std::size_t trial, std::uint64_t& graph_seed) {
  if (!cfg.tvg_file.empty()) {
    std::ifstream is(cfg.tvg_file);
    if (!is) throw std::runtime_error("cannot read TVG file " + cfg.tvg_file);
    graph_seed = 0;
    return tvg::Tvg::read(is);
  }
  auto gen = tvg::gen_small_diameter(tvg::family_from_string(cfg.family), n, derive_seed(cfg.seed, {n, trial, 2}));
  graph_seed = gen.seed_used;
  return std::move(gen.graph);
}

Built build_network(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
  Built b;
  auto graph = graph_for(cfg, n, trial, b.graph_seed);
  const auto size = graph.size();
  if (graph.instants() > 0) b.diameter = tvg::temporal_diffusion_diameter(graph, 0);
  auto programs = network::sample_population(size, derive_seed(cfg.seed, {size, trial, 1}), cfg.max_bits);
  try {
    b.assembly = network::assemble(std::move(graph), std::move(programs), cfg.c0, cfg.n_cycles);
  } catch (const network::ConfigMismatch& e) {
    throw ValidationError(e.what());
  }
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "seed",   "n",       "family",    "tvg_file",     "c0",     "n_cycles",  "budget",
      "max_bits", "w",     "w_sweep",   "w_bits",       "s",      "h",         "h_bar",
      "trials", "bb_bits", "bb_budget", "tau",          "synergy_x", "synergy_bits", "synergy_steps",
      "slack"};
  return keys;
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const auto v = trim(raw);
  if (key == "seed") seed = parse_u64(key, v);
  else if (key == "n") n_list = parse_list(key, v);
  else if (key == "family") family = v;
  else if (key == "tvg_file") tvg_file = v;
  else if (key == "c0") c0 = parse_u64(key, v);
  else if (key == "n_cycles") n_cycles = v == "auto" ? std::nullopt : std::optional<std::size_t>(parse_u64(key, v));
  else if (key == "budget") budget = parse_u64(key, v);
  else if (key == "max_bits") max_bits = parse_u64(key, v);
  else if (key == "w") w = parse_bits(key, v);
  else if (key == "w_sweep") w_sweep = parse_bool(key, v);
  else if (key == "w_bits") w_bits = parse_u64(key, v);
  else if (key == "s") s = v;
  else if (key == "h") h = parse_bits(key, v);
  else if (key == "h_bar") h_bar = parse_bits(key, v);
  else if (key == "trials") trials = parse_u64(key, v);
  else if (key == "bb_bits") bb_bits = parse_u64(key, v);
  else if (key == "bb_budget") bb_budget = parse_u64(key, v);
  else if (key == "tau") {
    try {
      std::size_t used = 0;
      tau = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw ValidationError("tau: expected a number, got \"" + v + "\"");
    }
  } else if (key == "synergy_x") synergy_x = parse_list(key, v);
  else if (key == "synergy_bits") synergy_bits = parse_u64(key, v);
  else if (key == "synergy_steps") synergy_steps = parse_u64(key, v);
  else if (key == "slack") slack = parse_u64(key, v);
  else throw ValidationError("unknown config key: " + key);
}

void ExperimentConfig::validate() const {
  for (auto n : n_list)
    if (n < 2) throw ValidationError("n: every population size must be >= 2");
  if (tvg_file.empty()) {
    try {
      (void)tvg::family_from_string(family);
    } catch (const tvg::UnknownFamily& e) {
      throw ValidationError(e.what());
    }
  }
  if (budget < 1) throw ValidationError("budget must be >= 1");
  if (max_bits < 1) throw ValidationError("max_bits must be >= 1");
  if (w.size() > 120) throw ValidationError("w must be at most 120 bits to fit a machine register");
  if (h == h_bar) throw ValidationError("h and h_bar must differ");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (bb_bits < 1 || bb_bits > 30) throw ValidationError("bb_bits must lie in [1, 30]");
  if (w_bits < 1 || w_bits > 16) throw ValidationError("w_bits must lie in [1, 16]");
  if (!(tau > 0.0 && tau <= 1.0)) throw ValidationError("tau must lie in (0, 1]");
  if (synergy_bits < 1 || synergy_bits > 28) throw ValidationError("synergy_bits must lie in [1, 28]");
  if (s != "p_halt" && s != "halt" && s != "identity") {
    if (s.empty() || s.find_first_not_of("01") != std::string::npos)
      throw ValidationError("s must be p_halt, identity or program bits");
    try {
      (void)machine::parse_program(Bitstring(s));
    } catch (const machine::MalformedEncoding& e) {
      throw ValidationError(std::string("s: ") + e.what());
    }
  }
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "seed=" << seed << '\n'
     << "n=" << join(n_list) << '\n'
     << "family=" << family << '\n'
     << "tvg_file=" << tvg_file << '\n'
     << "c0=" << c0 << '\n'
     << "n_cycles=" << (n_cycles ? std::to_string(*n_cycles) : std::string("auto")) << '\n'
     << "budget=" << budget << '\n'
     << "max_bits=" << max_bits << '\n'
     << "w=" << bits_value(w) << '\n'
     << "w_sweep=" << (w_sweep ? "true" : "false") << '\n'
     << "w_bits=" << w_bits << '\n'
     << "s=" << s << '\n'
     << "h=" << bits_value(h) << '\n'
     << "h_bar=" << bits_value(h_bar) << '\n'
     << "trials=" << trials << '\n'
     << "bb_bits=" << bb_bits << '\n'
     << "bb_budget=" << bb_budget << '\n'
     << "tau=" << fixed6(tau) << '\n'
     << "synergy_x=" << join(synergy_x) << '\n'
     << "synergy_bits=" << synergy_bits << '\n'
     << "synergy_steps=" << synergy_steps << '\n'
     << "slack=" << slack << '\n';
  return os.str();
}

std::string ExperimentConfig::fingerprint() const { return sha256_hex(canonical()); }

void load_config_file(ExperimentConfig& cfg, const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot read config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

Interval wilson95(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

bool non_decreasing_within_ci(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].ci.high < rows[i - 1].ci.low) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<fs::path> cmd_bb(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const auto table = machine::enumerate_bb(cfg.bb_bits, cfg.bb_budget);
  const auto overhead = table.time_overhead();

  std::ostringstream os;
  os << csv_header(cfg);
  os << "# time_overhead=" << (overhead ? std::to_string(*overhead) : std::string("none")) << '\n';
  table.write_csv(os);
  const auto path = dir / "bb.csv";
  write_file(path, os.str());

  log << "n  BB(n)  unknown\n";
  for (const auto& e : table.entries())
    log << e.n << "  " << (e.has_value ? to_decimal(e.value) : std::string("-")) << "  " << e.unknown_count << '\n';
  log << "resolved through n=" << table.resolved_through() << ", time overhead C = "
      << (overhead ? std::to_string(*overhead) : std::string("none")) << " (nominal "
      << machine::kSuccessorLength + machine::kTimeLength << ")\n";
  return {path};
}

std::vector<fs::path> cmd_tvg(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  std::uint64_t graph_seed = 0;
  const auto g = graph_for(cfg, cfg.n_list.front(), 0, graph_seed);
  const auto n = g.size();
  json j = stamp(cfg);
  j["n"] = n;
  j["instants"] = g.instants();
  j["arcs"] = g.arc_count();
  if (cfg.tvg_file.empty()) {
    j["family"] = cfg.family;
    j["graph_seed"] = graph_seed;
  }
  std::ostringstream csv;
  csv << csv_header(cfg) << "vertex,d_t,reverse_reach,centrality\n";
  if (g.instants() == 0 || n == 0) {
    j["diameter"] = n <= 1 ? json(0) : json("inf");
  } else {
    const auto arrival = tvg::arrival_matrix(g, 0);
    const auto diameter = tvg::temporal_diffusion_diameter(arrival, n);
    const auto reach = tvg::reverse_reach_all(arrival, n);
    j["diameter"] = steps_json(diameter);
    j["tau"] = cfg.tau;
    json verts = json::array();
    for (tvg::Vertex v = 0; v < n; ++v) {
      std::vector<tvg::Steps> row(arrival.begin() + static_cast<std::ptrdiff_t>(v * n),
                                  arrival.begin() + static_cast<std::ptrdiff_t>((v + 1) * n));
      const auto dt = tvg::d_t(row, cfg.tau);
      std::string centrality = "0";
      if (diameter != tvg::kUnreached && n >= 2) centrality = reach[v] == 1 ? "1" : "1/" + std::to_string(reach[v]);
      verts.push_back({{"vertex", v}, {"d_t", steps_json(dt)}, {"reverse_reach", steps_json(reach[v])},
                       {"centrality", centrality}});
      csv << v << ',' << tvg::format_steps(dt) << ',' << tvg::format_steps(reach[v]) << ',' << centrality << '\n';
    }
    j["vertices"] = verts;
    log << "N=" << n << " |T|=" << g.instants() << " D=" << tvg::format_steps(diameter) << '\n';
  }
  std::ostringstream graph;
  g.write(graph);
  const auto jp = dir / "tvg_metrics.json", cp = dir / "tvg_vertices.csv", gp = dir / "graph.tvg";
  write_file(jp, j.dump(2) + "\n");
  write_file(cp, csv.str());
  write_file(gp, graph.str());
  return {jp, cp, gp};
}

std::vector<fs::path> cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const auto built = build_network(cfg, cfg.n_list.front(), 0);
  const auto& a = built.assembly;
  const auto params = run_params(cfg);
  const auto rec = network::run_networked(a, params);
  const auto isolated = network::isolated_outputs(a, params.w, params.budget);

  std::optional<Bitstring> f_w;
  try {
    f_w = network::target_output(params, rec.x_max);
  } catch (const std::runtime_error&) {
  }

  json j = stamp(cfg);
  j["config"] = cfg.canonical();
  j["n"] = a.size();
  j["instants"] = a.graph.instants();
  j["diameter"] = steps_json(built.diameter);
  j["graph_seed"] = built.graph_seed;
  j["c0"] = a.c0;
  j["n_cycles"] = a.n_cycles;
  j["s"] = params.s.describe();
  j["w"] = bits_value(params.w);
  j["x_max"] = natural_json(rec.x_max);
  j["budget_exhausted"] = rec.budget_exhausted;
  j["f_w"] = f_w ? json(bits_value(*f_w)) : json(nullptr);
  std::size_t correct = 0;
  json cycles = json::array();
  for (std::size_t c = 0; c < rec.carried.size(); ++c) {
    Natural mx = 0, mn = rec.carried[c].empty() ? 0 : rec.carried[c][0].value;
    for (const auto& x : rec.carried[c]) {
      mx = std::max(mx, x.value);
      mn = std::min(mn, x.value);
    }
    std::size_t holders = 0;
    for (const auto& x : rec.carried[c]) holders += x.value == mx;
    cycles.push_back({{"cycle", c + 1}, {"max", natural_json(mx)}, {"min", natural_json(mn)}, {"holders", holders}});
  }
  j["per_cycle"] = cycles;

  std::ostringstream csv;
  csv << csv_header(cfg) << "node_id,program_bits,first_fitness,final_output,correct,isolated_output\n";
  for (const auto& node : rec.nodes) {
    const bool ok = f_w && rec.final_outputs[node.id] == *f_w;
    correct += ok;
    csv << node.id << ',' << node.program.encoding().str() << ',' << to_decimal(node.first_fitness) << ','
        << bits_value(rec.final_outputs[node.id]) << ',' << (ok ? 1 : 0) << ',' << bits_value(isolated[node.id])
        << '\n';
  }
  j["correct"] = correct;
  j["all_correct"] = f_w.has_value() && correct == a.size();

  const auto jp = dir / "run.json", cp = dir / "nodes.csv";
  write_file(jp, j.dump(2) + "\n");
  write_file(cp, csv.str());
  log << "N=" << a.size() << " D=" << tvg::format_steps(built.diameter) << " x_max=" << to_decimal(rec.x_max)
      << " correct=" << correct << "/" << a.size() << '\n';
  return {jp, cp};
}

namespace {

const char* kSweepColumns =
    "n,trial,w,diameter,x_max,l_w,bb_resolved,bb_at_l_w,condition,w_decided,w_halts,correct,all_correct";

std::string sweep_line(const network::SweepTrial& t) {
  std::ostringstream os;
  os << t.n << ',' << t.trial << ',' << bits_value(t.w) << ',' << t.diameter << ',' << to_decimal(t.x_max) << ','
     << t.l_w << ',' << t.bb_resolved << ',' << to_decimal(t.bb_at_l_w) << ',' << t.condition << ',' << t.w_decided
     << ',' << t.w_halts << ',' << t.correct << ',' << t.all_correct;
  return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string col;
  while (std::getline(ss, col, ',')) cols.push_back(col);
  return cols;
}

// Complete rows of an earlier sweep with the same header, or none.
std::vector<std::string> resumable_rows(const fs::path& path, const std::string& header) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return {};
  std::string content((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (content.compare(0, header.size(), header) != 0) return {};
  std::vector<std::string> rows;
  std::size_t pos = header.size();
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    if (nl == std::string::npos) break;  // partial last line
    rows.push_back(content.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> read_sweep_summary(const fs::path& sweep_csv) {
  std::ifstream is(sweep_csv);
  if (!is) throw std::runtime_error("cannot read " + sweep_csv.string());
  std::vector<SweepRow> rows;
  std::vector<std::map<std::size_t, bool>> by_length;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    const auto c = split_csv(line);
    if (c.size() != 13) throw std::runtime_error("bad sweep row: " + line);
    const auto n = std::stoull(c[0]);
    if (rows.empty() || rows.back().n != n) {
      rows.push_back(SweepRow{n, 0, 0, 0, 0, 0, 0.0, {}, std::nullopt});
      by_length.emplace_back();
    }
    auto& r = rows.back();
    ++r.trials;
    const bool all = c[12] == "1", cond = c[8] == "1";
    r.all_correct += all;
    r.condition_trials += cond;
    r.condition_correct += cond && all;
    r.undecided_w += c[9] != "1";
    const std::size_t len = c[2] == "eps" ? 0 : c[2].size();
    auto [it, fresh] = by_length.back().emplace(len, all);
    if (!fresh) it->second = it->second && all;
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto& r = rows[k];
    for (const auto& [len, ok] : by_length[k]) {
      if (!ok) break;
      r.l_star = len;
    }
    r.fraction = static_cast<double>(r.all_correct) / static_cast<double>(r.trials);
    r.ci = wilson95(r.all_correct, r.trials);
  }
  return rows;
}

std::vector<fs::path> cmd_halting_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (!cfg.tvg_file.empty()) throw ValidationError("halting-sweep generates its graphs; tvg_file is not allowed");
  const auto dir = prepare_out(cfg);
  const auto bb = machine::enumerate_bb(cfg.bb_bits, cfg.bb_budget);

  network::SweepSetup setup;
  setup.family = tvg::family_from_string(cfg.family);
  setup.c0 = cfg.c0;
  setup.max_bits = cfg.max_bits;
  setup.budget = cfg.budget;
  setup.labels = {cfg.h, cfg.h_bar};
  setup.time_overhead = bb.time_overhead().value_or(machine::kSuccessorLength + machine::kTimeLength);

  std::vector<Bitstring> ws;
  if (cfg.w_sweep) {
    for (const auto& p : machine::enumerate_programs(cfg.w_bits)) ws.push_back(p.encoding());
  } else {
    ws.push_back(cfg.w);
  }

  const auto path = dir / "sweep.csv";
  const std::string header = csv_header(cfg) + kSweepColumns + "\n";
  auto done = resumable_rows(path, header);
  const std::size_t total = cfg.n_list.size() * cfg.trials;
  if (done.size() > total) done.clear();
  if (!done.empty()) log << "resuming after " << done.size() << " of " << total << " trials\n";

  {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << header;
    for (const auto& r : done) os << r << '\n';
  }
  std::ofstream os(path, std::ios::binary | std::ios::app);
  std::size_t index = 0;
  for (auto n : cfg.n_list) {
    const std::size_t first = index;
    index += cfg.trials;
    if (done.size() >= index) continue;
    const std::size_t start = std::max(first, done.size()) - first;
    constexpr std::size_t kChunk = 32;
    for (std::size_t lo = start; lo < cfg.trials; lo += kChunk) {
      const std::size_t hi = std::min(cfg.trials, lo + kChunk);
      std::vector<network::SweepTrial> results(hi - lo);
      const auto count = static_cast<std::int64_t>(hi - lo);
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t i = 0; i < count; ++i) {
        const auto t = lo + static_cast<std::size_t>(i);
        results[static_cast<std::size_t>(i)] = network::halting_trial(setup, bb, n, t, ws[t % ws.size()], cfg.seed);
      }
      for (const auto& r : results) os << sweep_line(r) << '\n';
      os.flush();
    }
    log << "N=" << n << " done\n";
  }
  os.close();

  const auto rows = read_sweep_summary(path);
  std::ostringstream sum;
  sum << csv_header(cfg)
      << "n,trials,all_correct,fraction,ci_low,ci_high,condition_trials,condition_correct,undecided_w\n";
  bool conditional_ok = true;
  json per_n = json::array();
  for (const auto& r : rows) {
    sum << r.n << ',' << r.trials << ',' << r.all_correct << ',' << fixed6(r.fraction) << ',' << fixed6(r.ci.low)
        << ',' << fixed6(r.ci.high) << ',' << r.condition_trials << ',' << r.condition_correct << ',' << r.undecided_w
        << '\n';
    conditional_ok = conditional_ok && r.condition_correct == r.condition_trials;
    per_n.push_back({{"n", r.n}, {"l_star", r.l_star ? json(*r.l_star) : json(nullptr)}});
    log << "N=" << r.n << " all-correct " << r.all_correct << "/" << r.trials << " (" << fixed6(r.fraction)
        << "), conditional " << r.condition_correct << "/" << r.condition_trials << '\n';
  }
  json j = stamp(cfg);
  j["time_overhead"] = setup.time_overhead;
  j["bb_resolved_through"] = bb.resolved_through();
  j["w_count"] = ws.size();
  j["conditional_correctness"] = conditional_ok;
  j["non_decreasing_within_ci"] = non_decreasing_within_ci(rows);
  j["per_n"] = per_n;
  const auto sp = dir / "sweep_summary.csv", jp = dir / "sweep.json";
  write_file(sp, sum.str());
  write_file(jp, j.dump(2) + "\n");
  return {path, sp, jp};
}

std::vector<fs::path> cmd_synergy(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  measures::Estimator est({cfg.synergy_bits, cfg.synergy_steps});
  const Bitstring w_min = cfg.w;

  json j = stamp(cfg);
  j["w_min"] = bits_value(w_min);
  j["slack_constant"] = cfg.slack;
  j["c_copy"] = est.a_hat_cond(Bitstring("0110"), Bitstring("0110")).value;
  json per_x = json::array();
  std::ostringstream csv;
  csv << csv_header(cfg) << "x,n,trial,correct,sum,mean,fallback_estimates,pass\n";

  for (auto x : cfg.synergy_x) {
    const auto choice = measures::pick_labels(x, est, cfg.seed, w_min, cfg.slack);
    json jx;
    jx["x"] = x;
    jx["h"] = bits_value(choice.labels.halts);
    jx["h_bar"] = bits_value(choice.labels.loops);
    jx["threshold"] = choice.threshold;
    jx["h_estimate"] = {{"value", choice.halts_estimate.value},
                        {"method", measures::to_string(choice.halts_estimate.method)}};
    jx["h_bar_estimate"] = {{"value", choice.loops_estimate.value},
                            {"method", measures::to_string(choice.loops_estimate.method)}};
    json per_n = json::array();
    for (auto n : cfg.n_list) {
      std::size_t correct_runs = 0, passing = 0;
      json means = json::array();
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        auto run_cfg = cfg;
        run_cfg.h = choice.labels.halts;
        run_cfg.h_bar = choice.labels.loops;
        const auto built = build_network(run_cfg, n, t);
        const auto params = run_params(run_cfg);
        const auto rec = network::run_networked(built.assembly, params);
        const auto f_w = network::target_output(params, rec.x_max);
        const bool correct = std::all_of(rec.final_outputs.begin(), rec.final_outputs.end(),
                                         [&](const Bitstring& o) { return o == f_w; });
        const auto iso = network::isolated_outputs(built.assembly, params.w, params.budget);
        const auto rep = measures::expected_local_synergy(rec.final_outputs, iso, f_w, est);
        const bool pass = rep.mean >= static_cast<double>(x) - static_cast<double>(cfg.slack);
        correct_runs += correct;
        passing += correct && pass;
        means.push_back(rep.mean);
        csv << x << ',' << n << ',' << t << ',' << correct << ',' << rep.sum << ',' << fixed6(rep.mean) << ','
            << rep.fallback_estimates << ',' << pass << '\n';
      }
      const double fraction = correct_runs ? static_cast<double>(passing) / static_cast<double>(correct_runs) : 0.0;
      per_n.push_back({{"n", n}, {"runs", cfg.trials}, {"correct_runs", correct_runs}, {"passing", passing},
                       {"fraction", fraction}, {"means", means}});
      log << "x=" << x << " N=" << n << " passing " << passing << "/" << correct_runs << " correct runs\n";
    }
    jx["per_n"] = per_n;
    per_x.push_back(jx);
  }
  j["per_x"] = per_x;

  std::ostringstream cache;
  est.write_cache_csv(cache);
  const auto jp = dir / "synergy.json", cp = dir / "synergy.csv", kp = dir / "complexity_cache.csv";
  write_file(jp, j.dump(2) + "\n");
  write_file(cp, csv.str());
  write_file(kp, csv_header(cfg) + cache.str());
  return {jp, cp, kp};
}

std::vector<fs::path> cmd_central(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const auto built = build_network(cfg, cfg.n_list.front(), 0);
  const auto& a = built.assembly;
  const auto params = run_params(cfg);
  const auto rep = network::find_central_node(a, params);

  bool minimal = true;
  for (tvg::Vertex v = 0; v < a.size(); ++v)
    if (!rep.excluded[v] && rep.qualifying[v] < rep.c_min) minimal = false;
  const auto trace = network::isolated_trace(a.programs[rep.node], params.w, rep.c_min - 1, params.budget);
  const bool isolated_fails = trace.back() != rep.f_w;

  json j = stamp(cfg);
  j["n"] = a.size();
  j["diameter"] = steps_json(built.diameter);
  j["node"] = rep.node;
  j["vertex"] = rep.vertex;
  j["reverse_reach"] = rep.reverse_reach[rep.vertex];
  j["c_min"] = rep.c_min;
  j["observed_earliest"] = rep.observed_earliest;
  j["verified"] = rep.verified;
  j["c_min_minimal"] = minimal;
  j["isolated_fails_before_c_min"] = isolated_fails;
  j["f_w"] = bits_value(rep.f_w);
  std::size_t excluded = 0;
  for (auto e : rep.excluded) excluded += e != 0;
  j["excluded_nodes"] = excluded;
  json verts = json::array();
  for (tvg::Vertex v = 0; v < a.size(); ++v)
    verts.push_back({{"vertex", v}, {"reverse_reach", steps_json(rep.reverse_reach[v])},
                     {"qualifying", rep.qualifying[v]}, {"excluded", rep.excluded[v] != 0}});
  j["vertices"] = verts;
  const auto jp = dir / "central.json";
  write_file(jp, j.dump(2) + "\n");
  log << "central node " << rep.node << " c_min=" << rep.c_min << " observed=" << rep.observed_earliest
      << " verified=" << rep.verified << '\n';
  return {jp};
}

}  // namespace algnet::cli
