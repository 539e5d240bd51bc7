#pragma once

// Time-varying graphs whose arcs join consecutive instants, (u, t_i) -> (v, t_{i+1}),
// and the diffusion metrics defined on them. Instants are 0-based indices.
// A diffusion started at t_i keeps every vertex it has reached and advances one
// interval per step, so after k steps it has used the arcs of t_i .. t_{i+k-1}.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace algnet::tvg {

using Vertex = std::uint32_t;
using Steps = std::uint32_t;
inline constexpr Steps kUnreached = std::numeric_limits<Steps>::max();

class UnknownVertex : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};
class BadFraction : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};
class InfiniteDiameter : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class UnknownFamily : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};
class BadTvg : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Arc {
  Vertex from;
  std::size_t instant;  // the arc leaves at t_instant and lands at t_{instant+1}
  Vertex to;

  friend bool operator==(const Arc&, const Arc&) = default;
};

class Tvg {
public:
  Tvg() = default;
  Tvg(std::size_t vertices, std::size_t instants);

  std::size_t size() const noexcept { return n_; }
  std::size_t instants() const noexcept { return instants_; }
  std::size_t intervals() const noexcept { return instants_ ? instants_ - 1 : 0; }
  std::size_t arc_count() const noexcept;

  // Duplicate arcs are ignored.
  void add_arc(Vertex from, std::size_t instant, Vertex to);
  // The same arc in every interval.
  void add_static_arc(Vertex from, Vertex to);

  const std::vector<Vertex>& in_neighbors(Vertex v, std::size_t interval) const;
  const std::vector<Vertex>& out_neighbors(Vertex u, std::size_t interval) const;
  std::vector<Arc> arcs() const;

  // The first `instants` instants and the arcs between them.
  Tvg trimmed(std::size_t instants) const;

  void check_vertex(Vertex v) const;
  void check_instant(std::size_t t) const;

  // "N |T|" then one "u t_i v t_j" line per arc.
  void write(std::ostream& os) const;
  static Tvg read(std::istream& is);

  friend bool operator==(const Tvg&, const Tvg&) = default;

private:
  std::size_t n_ = 0;
  std::size_t instants_ = 0;
  // [interval][vertex], kept sorted
  std::vector<std::vector<std::vector<Vertex>>> out_;
  std::vector<std::vector<std::vector<Vertex>>> in_;
};

// arrival[s * N + v]: steps for a diffusion from s started at t to reach v.
using ArrivalMatrix = std::vector<Steps>;

// Bit-parallel over blocks of 64 sources, OpenMP over blocks.
ArrivalMatrix arrival_matrix(const Tvg& g, std::size_t t);
namespace serial {
// One breadth-first diffusion per source.
ArrivalMatrix arrival_matrix(const Tvg& g, std::size_t t);
}  // namespace serial

std::vector<Steps> arrivals_from(const Tvg& g, std::size_t t, Vertex source);

// Smallest k such that ceil(tau * N) vertices are reached within k intervals.
Steps d_t(const Tvg& g, std::size_t t, Vertex u, double tau);
Steps d_t(const std::vector<Steps>& arrivals, double tau);
Steps temporal_diffusion_diameter(const Tvg& g, std::size_t t);
Steps temporal_diffusion_diameter(const ArrivalMatrix& arrival, std::size_t n);

// Worst case over sources of the steps needed to reach u.
Steps reverse_reach(const Tvg& g, std::size_t t, Vertex u);
std::vector<Steps> reverse_reach_all(const ArrivalMatrix& arrival, std::size_t n);

// 1 / reverse_reach, kept as the denominator.
struct Centrality {
  Steps denominator = 1;
  double value() const noexcept { return 1.0 / static_cast<double>(denominator); }
  friend auto operator<=>(const Centrality& a, const Centrality& b) noexcept {
    return b.denominator <=> a.denominator;
  }
  friend bool operator==(const Centrality&, const Centrality&) = default;
};

Centrality time_reachability_centrality(const Tvg& g, std::size_t t, Vertex u);
// Vertices with centrality exactly 1 / k.
std::vector<Vertex> vertices_with_reach(const Tvg& g, std::size_t t, Steps k);

std::string format_steps(Steps s);

// Small-diameter families.
enum class Family : std::uint8_t { StarBroadcast, ReplicatedHypercube, ReplicatedRandomRegular };

Family family_from_string(const std::string& name);  // throws UnknownFamily
std::string to_string(Family f);
// D <= c * ceil(lg N) is checked for every generated graph.
unsigned diameter_constant(Family f) noexcept;
unsigned ceil_lg(std::size_t n) noexcept;

struct Generated {
  Tvg graph;  // |T| = D + 1
  Steps diameter = 0;
  std::uint64_t seed_used = 0;  // after rejections
};

Generated gen_small_diameter(Family family, std::size_t n, std::uint64_t seed);

}  // namespace algnet::tvg
