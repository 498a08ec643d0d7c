#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chromix/graph.hpp"
#include "chromix/rng.hpp"
#include "chromix/spectral.hpp"

namespace chromix {

// Vertex coloring with palette {1..k}. Properness is always checked, never
// assumed.
struct Coloring {
  std::vector<int> colors;
  int k = 0;

  int operator[](Vertex v) const { return colors[v]; }
};

// Throws if any color is outside [1, k].
bool is_proper(const Graph& g, const Coloring& c);

// Palette colors absent from N(v), sorted ascending. For a proper coloring
// this always contains c[v], so the result is never empty.
std::vector<int> available_colors(const Graph& g, const Coloring& c, Vertex v);

struct ChainState {
  Coloring coloring;
  long steps = 0;
  Rng rng;

  ChainState(Coloring c, std::uint64_t seed) : coloring(std::move(c)), rng(seed) {}
};

// One Glauber update: uniform vertex, color redrawn uniformly from its
// available set. Restricting to a vertex subset draws the vertex from there.
void glauber_step(ChainState& state, const Graph& g);
void glauber_step(ChainState& state, const Graph& g, std::span<const Vertex> restrict_to);

enum class RoundMode { kRandom, kSweepIfIndependent };

// Round budget for level j: ceil(|L_j| * ln(max_degree)), at least 1.
long set_dynamics_round_budget(const Graph& g, std::size_t level_size);

// Runs one round of the set dynamics on level `level`. Returns the number of
// vertex updates performed. Sweep mode requires the level to be independent
// in g and recolors each vertex exactly once in id order.
long set_dynamics_round(ChainState& state, const Graph& g, const LevelPartition& p,
                        int level, RoundMode mode = RoundMode::kRandom);

struct RoundStat {
  long round = 0;
  int level = 0;
  long updates = 0;
  int nearly_frozen_at_start = 0;  // |F_level| snapshot, threshold 2*Delta^(1-eps/4)
};

struct SetDynamicsStats {
  long total_updates = 0;
  std::vector<RoundStat> rounds;
};

// Rounds cycle j = i mod m; empty levels are skipped (they contribute a
// round with zero updates).
SetDynamicsStats run_set_dynamics(ChainState& state, const Graph& g,
                                  const LevelPartition& p, long rounds,
                                  RoundMode mode = RoundMode::kRandom,
                                  bool record_frozen = false);

// Greedy proper coloring along `order` using only `palette` colors (lowest
// usable color each step). Throws with the stuck vertex if the palette runs
// out, which cannot happen when order reverses a peeling order and
// |palette| >= d+1.
Coloring greedy_coloring(const Graph& g, std::span<const Vertex> order,
                         std::span<const int> palette);

struct Move {
  Vertex v;
  int old_color;
  int new_color;
};

// Single-site walk from `from` to `to` where `to` uses only colors
// {1..d+1}. Requires k >= 2(d+1). Works in rounds over the peeling order,
// alternating the banks {1..d+1} and {d+2..2d+2} by round parity; the last
// round writes `to` exactly. At most n(n+1)/2 moves, every intermediate
// proper.
std::vector<Move> canonical_path(const Graph& g, const Coloring& from,
                                 const Coloring& to, const DegeneracyData& degen);

// Walk between two arbitrary proper colorings composed through the greedy
// (d+1)-coloring on colors {1..d+1}.
std::vector<Move> canonical_path_between(const Graph& g, const Coloring& a,
                                         const Coloring& b, const DegeneracyData& degen);

// Diameter walk of the layered construction: V is split into S_1..S_l where
// every v in S_i has at most k/2-1 neighbors in S_i u S_{i+1} u ..., and
// rounds recolor S_i..S_1 with alternating half-palettes. Requires
// k >= 2d+2 (degeneracy d standing in for the hereditary average degree).
// Throws if the greedy set construction stalls.
std::vector<Move> layered_path(const Graph& g, const Coloring& from,
                               const Coloring& to, int k);

// The S_1..S_l split used by layered_path, exposed for inspection.
std::vector<std::vector<Vertex>> layered_sets(const Graph& g, int k);

// Applies moves in order; throws if any move is not a proper single-site
// recoloring of the current state.
Coloring apply_moves(const Graph& g, Coloring start, std::span<const Move> moves);

std::vector<Move> reverse_moves(std::span<const Move> moves);

std::string coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const std::string& text, int k);
std::string moves_to_csv(std::span<const Move> moves);

}  // namespace chromix
