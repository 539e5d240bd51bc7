#include "algnet/tvg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include "algnet/rng.hpp"

namespace algnet::tvg {

Tvg::Tvg(std::size_t vertices, std::size_t instants)
    : n_(vertices),
      instants_(instants),
      out_(instants ? instants - 1 : 0, std::vector<std::vector<Vertex>>(vertices)),
      in_(instants ? instants - 1 : 0, std::vector<std::vector<Vertex>>(vertices)) {}

std::size_t Tvg::arc_count() const noexcept {
  std::size_t count = 0;
  for (const auto& layer : out_)
    for (const auto& adj : layer) count += adj.size();
  return count;
}

void Tvg::check_vertex(Vertex v) const {
  if (v >= n_) throw UnknownVertex("vertex " + std::to_string(v) + " not in [0, " + std::to_string(n_) + ")");
}

void Tvg::check_instant(std::size_t t) const {
  if (t >= instants_)
    throw std::out_of_range("instant " + std::to_string(t) + " not in [0, " + std::to_string(instants_) + ")");
}

namespace {
void insert_sorted(std::vector<Vertex>& adj, Vertex v) {
  auto it = std::lower_bound(adj.begin(), adj.end(), v);
  if (it == adj.end() || *it != v) adj.insert(it, v);
}
}  // namespace

void Tvg::add_arc(Vertex from, std::size_t instant, Vertex to) {
  check_vertex(from);
  check_vertex(to);
  if (instant + 1 >= instants_)
    throw BadTvg("arc leaves t_" + std::to_string(instant) + " but the last instant is t_" +
                 std::to_string(instants_ ? instants_ - 1 : 0));
  insert_sorted(out_[instant][from], to);
  insert_sorted(in_[instant][to], from);
}

void Tvg::add_static_arc(Vertex from, Vertex to) {
  for (std::size_t i = 0; i < intervals(); ++i) add_arc(from, i, to);
}

const std::vector<Vertex>& Tvg::in_neighbors(Vertex v, std::size_t interval) const {
  return in_.at(interval).at(v);
}

const std::vector<Vertex>& Tvg::out_neighbors(Vertex u, std::size_t interval) const {
  return out_.at(interval).at(u);
}

std::vector<Arc> Tvg::arcs() const {
  std::vector<Arc> all;
  for (std::size_t i = 0; i < out_.size(); ++i)
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : out_[i][u]) all.push_back({u, i, v});
  return all;
}

Tvg Tvg::trimmed(std::size_t instants) const {
  Tvg g(n_, std::min(instants, instants_));
  for (std::size_t i = 0; i < g.intervals(); ++i) {
    g.out_[i] = out_[i];
    g.in_[i] = in_[i];
  }
  return g;
}

void Tvg::write(std::ostream& os) const {
  os << n_ << ' ' << instants_ << '\n';
  for (const auto& a : arcs()) os << a.from << ' ' << a.instant << ' ' << a.to << ' ' << a.instant + 1 << '\n';
}

Tvg Tvg::read(std::istream& is) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(is, out)) {
      const auto hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw BadTvg("empty TVG file");
  std::istringstream header(line);
  long long n = -1, instants = -1;
  if (!(header >> n >> instants) || n < 0 || instants < 0) throw BadTvg("bad TVG header: " + line);
  Tvg g(static_cast<std::size_t>(n), static_cast<std::size_t>(instants));
  while (next_line(line)) {
    std::istringstream row(line);
    long long u = -1, ti = -1, v = -1, tj = -1;
    if (!(row >> u >> ti >> v >> tj) || u < 0 || ti < 0 || v < 0 || tj < 0) throw BadTvg("bad arc line: " + line);
    if (tj != ti + 1) throw BadTvg("arc must join consecutive instants: " + line);
    if (tj >= instants) throw BadTvg("arc references a missing instant: " + line);
    if (u >= n || v >= n) throw UnknownVertex("arc references a missing vertex: " + line);
    g.add_arc(static_cast<Vertex>(u), static_cast<std::size_t>(ti), static_cast<Vertex>(v));
  }
  return g;
}

// ---------------------------------------------------------------------------

std::vector<Steps> arrivals_from(const Tvg& g, std::size_t t, Vertex source) {
  g.check_vertex(source);
  g.check_instant(t);
  std::vector<Steps> arrival(g.size(), kUnreached);
  arrival[source] = 0;
  std::vector<Vertex> reached{source};
  for (std::size_t i = t; i < g.intervals(); ++i) {
    const auto k = static_cast<Steps>(i - t + 1);
    std::vector<Vertex> fresh;
    for (Vertex u : reached) {
      for (Vertex v : g.out_neighbors(u, i)) {
        if (arrival[v] == kUnreached) {
          arrival[v] = k;
          fresh.push_back(v);
        }
      }
    }
    if (reached.size() + fresh.size() == g.size()) break;
    reached.insert(reached.end(), fresh.begin(), fresh.end());
  }
  return arrival;
}

namespace serial {
ArrivalMatrix arrival_matrix(const Tvg& g, std::size_t t) {
  const auto n = g.size();
  ArrivalMatrix m(n * n);
  for (Vertex s = 0; s < n; ++s) {
    const auto row = arrivals_from(g, t, s);
    std::copy(row.begin(), row.end(), m.begin() + static_cast<std::ptrdiff_t>(s * n));
  }
  return m;
}
}  // namespace serial

ArrivalMatrix arrival_matrix(const Tvg& g, std::size_t t) {
  g.check_instant(t);
  const auto n = g.size();
  ArrivalMatrix m(n * n, kUnreached);
  const auto blocks = static_cast<std::int64_t>((n + 63) / 64);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::size_t base = static_cast<std::size_t>(b) * 64;
    const std::size_t width = std::min<std::size_t>(64, n - base);
    const std::uint64_t full = width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
    // mask[v] bit j: source base + j has reached v
    std::vector<std::uint64_t> mask(n, 0), next(n, 0);
    for (std::size_t j = 0; j < width; ++j) {
      mask[base + j] |= std::uint64_t{1} << j;
      m[(base + j) * n + base + j] = 0;
    }
    for (std::size_t i = t; i < g.intervals(); ++i) {
      const auto k = static_cast<Steps>(i - t + 1);
      bool done = true;
      for (Vertex v = 0; v < n; ++v) {
        std::uint64_t acc = mask[v];
        for (Vertex u : g.in_neighbors(v, i)) acc |= mask[u];
        next[v] = acc;
        for (std::uint64_t fresh = acc & ~mask[v]; fresh; fresh &= fresh - 1) {
          const auto j = static_cast<std::size_t>(std::countr_zero(fresh));
          m[(base + j) * n + v] = k;
        }
        done = done && acc == full;
      }
      mask.swap(next);
      if (done) break;
    }
  }
  return m;
}

Steps d_t(const std::vector<Steps>& arrivals, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw BadFraction("tau must lie in (0, 1], got " + std::to_string(tau));
  const auto n = arrivals.size();
  const auto need = static_cast<std::size_t>(std::ceil(tau * static_cast<double>(n) - 1e-9));
  std::vector<Steps> sorted(arrivals);
  std::sort(sorted.begin(), sorted.end());
  if (need == 0) return 0;
  return sorted[need - 1];
}

Steps d_t(const Tvg& g, std::size_t t, Vertex u, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw BadFraction("tau must lie in (0, 1], got " + std::to_string(tau));
  return d_t(arrivals_from(g, t, u), tau);
}

Steps temporal_diffusion_diameter(const ArrivalMatrix& arrival, std::size_t n) {
  Steps worst = 0;
  for (auto a : arrival) worst = std::max(worst, a);
  return n == 0 ? 0 : worst;
}

Steps temporal_diffusion_diameter(const Tvg& g, std::size_t t) {
  return temporal_diffusion_diameter(arrival_matrix(g, t), g.size());
}

std::vector<Steps> reverse_reach_all(const ArrivalMatrix& arrival, std::size_t n) {
  std::vector<Steps> reach(n, 0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t v = 0; v < n; ++v) reach[v] = std::max(reach[v], arrival[s * n + v]);
  return reach;
}

Steps reverse_reach(const Tvg& g, std::size_t t, Vertex u) {
  g.check_vertex(u);
  g.check_instant(t);
  Steps worst = 0;
  for (Vertex s = 0; s < g.size(); ++s) worst = std::max(worst, arrivals_from(g, t, s)[u]);
  return worst;
}

Centrality time_reachability_centrality(const Tvg& g, std::size_t t, Vertex u) {
  g.check_vertex(u);
  if (g.size() < 2) throw InfiniteDiameter("centrality needs at least two vertices");
  if (temporal_diffusion_diameter(g, t) == kUnreached)
    throw InfiniteDiameter("temporal diffusion diameter is infinite");
  return {reverse_reach(g, t, u)};
}

std::vector<Vertex> vertices_with_reach(const Tvg& g, std::size_t t, Steps k) {
  const auto reach = reverse_reach_all(arrival_matrix(g, t), g.size());
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.size(); ++v)
    if (reach[v] == k) out.push_back(v);
  return out;
}

std::string format_steps(Steps s) { return s == kUnreached ? "inf" : std::to_string(s); }

// ---------------------------------------------------------------------------

Family family_from_string(const std::string& name) {
  if (name == "star-broadcast") return Family::StarBroadcast;
  if (name == "replicated-hypercube") return Family::ReplicatedHypercube;
  if (name == "replicated-random-regular") return Family::ReplicatedRandomRegular;
  throw UnknownFamily("unknown TVG family: " + name);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::StarBroadcast: return "star-broadcast";
    case Family::ReplicatedHypercube: return "replicated-hypercube";
    case Family::ReplicatedRandomRegular: return "replicated-random-regular";
  }
  return "?";
}

unsigned diameter_constant(Family f) noexcept {
  return f == Family::ReplicatedRandomRegular ? 2 : 1;
}

unsigned ceil_lg(std::size_t n) noexcept {
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

namespace {

using Adjacency = std::vector<std::vector<Vertex>>;

// Static eccentricity maximum; for a graph replicated in every interval this
// is the temporal diffusion diameter.
Steps static_diameter(const Adjacency& adj) {
  const auto n = adj.size();
  Steps worst = 0;
  std::vector<Steps> dist(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    dist[s] = 0;
    std::deque<Vertex> queue{s};
    std::size_t seen = 1;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex v : adj[u]) {
        if (dist[v] != kUnreached) continue;
        dist[v] = dist[u] + 1;
        worst = std::max(worst, dist[v]);
        ++seen;
        queue.push_back(v);
      }
    }
    if (seen != n) return kUnreached;
  }
  return worst;
}

void link(Adjacency& adj, Vertex a, Vertex b) {
  if (a == b) return;
  insert_sorted(adj[a], b);
  insert_sorted(adj[b], a);
}

Adjacency family_adjacency(Family family, std::size_t n, std::uint64_t seed) {
  Adjacency adj(n);
  switch (family) {
    case Family::StarBroadcast:
      for (Vertex v = 1; v < n; ++v) link(adj, 0, v);
      break;
    case Family::ReplicatedHypercube:
      for (Vertex u = 0; u < n; ++u)
        for (unsigned k = 0; (std::size_t{1} << k) < n; ++k) {
          const Vertex v = u ^ (Vertex{1} << k);
          if (v < n) link(adj, u, v);
        }
      break;
    case Family::ReplicatedRandomRegular: {
      auto rng = make_rng(seed, {0x7267ULL, n});
      std::vector<Vertex> perm(n);
      for (unsigned d = 0; d < std::max(1u, ceil_lg(n)); ++d) {
        for (Vertex v = 0; v < n; ++v) perm[v] = v;
        shuffle(perm, rng);
        for (Vertex v = 0; v < n; ++v) link(adj, v, perm[v]);
      }
      break;
    }
  }
  return adj;
}

}  // namespace

Generated gen_small_diameter(Family family, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("small-diameter families need N >= 2");
  const Steps bound = diameter_constant(family) * ceil_lg(n);
  std::uint64_t s = seed;
  for (int attempt = 0; attempt < 1000; ++attempt, ++s) {
    const auto adj = family_adjacency(family, n, s);
    const Steps d = static_diameter(adj);
    if (d == kUnreached || d > bound) {
      if (family != Family::ReplicatedRandomRegular)
        throw std::logic_error("deterministic family exceeded its diameter bound");
      continue;
    }
    Generated out{Tvg(n, d + 1), d, s};
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : adj[u]) out.graph.add_static_arc(u, v);
    return out;
  }
  throw std::runtime_error("no small-diameter graph found after 1000 seeds");
}

}  // namespace algnet::tvg
