#include "chromix/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace chromix {

namespace {

void check_coloring_shape(const Graph& g, const Coloring& c) {
  if (static_cast<int>(c.colors.size()) != g.n)
    throw std::invalid_argument("coloring size does not match graph");
  for (Vertex v = 0; v < g.n; ++v)
    if (c.colors[v] < 1 || c.colors[v] > c.k)
      throw std::invalid_argument("color out of range at vertex " + std::to_string(v));
}

void require_proper(const Graph& g, const Coloring& c, const char* what) {
  if (!is_proper(g, c))
    throw std::invalid_argument(std::string(what) + " coloring is not proper");
}

// Lowest color in [lo, hi] not present among the current neighbor colors,
// or 0 if all are blocked.
int lowest_free_in_bank(const Graph& g, const std::vector<int>& colors, Vertex v,
                        int lo, int hi) {
  std::vector<char> used(hi - lo + 1, 0);
  for (Vertex u : g.adj[v]) {
    const int c = colors[u];
    if (c >= lo && c <= hi) used[c - lo] = 1;
  }
  for (int c = lo; c <= hi; ++c)
    if (!used[c - lo]) return c;
  return 0;
}

bool conflicts(const Graph& g, const std::vector<int>& colors, Vertex v, int c) {
  for (Vertex u : g.adj[v])
    if (colors[u] == c) return true;
  return false;
}

}  // namespace

bool is_proper(const Graph& g, const Coloring& c) {
  check_coloring_shape(g, c);
  for (auto [u, v] : g.edges)
    if (c.colors[u] == c.colors[v]) return false;
  return true;
}

std::vector<int> available_colors(const Graph& g, const Coloring& c, Vertex v) {
  std::vector<char> used(c.k + 1, 0);
  for (Vertex u : g.adj[v]) used[c.colors[u]] = 1;
  std::vector<int> out;
  for (int col = 1; col <= c.k; ++col)
    if (!used[col]) out.push_back(col);
  return out;
}

void glauber_step(ChainState& state, const Graph& g) {
  const Vertex v = static_cast<Vertex>(state.rng.below(g.n));
  const auto avail = available_colors(g, state.coloring, v);
  state.coloring.colors[v] = avail[state.rng.pick_index(avail.size())];
  ++state.steps;
}

void glauber_step(ChainState& state, const Graph& g,
                  std::span<const Vertex> restrict_to) {
  if (restrict_to.empty())
    throw std::invalid_argument("restricted Glauber step needs a nonempty set");
  const Vertex v = restrict_to[state.rng.pick_index(restrict_to.size())];
  const auto avail = available_colors(g, state.coloring, v);
  state.coloring.colors[v] = avail[state.rng.pick_index(avail.size())];
  ++state.steps;
}

long set_dynamics_round_budget(const Graph& g, std::size_t level_size) {
  const double ln_delta = std::log(std::max(g.max_degree, 2));
  return std::max<long>(1, static_cast<long>(std::ceil(level_size * ln_delta)));
}

long set_dynamics_round(ChainState& state, const Graph& g, const LevelPartition& p,
                        int level, RoundMode mode) {
  const auto& L = p.levels.at(level);
  if (L.empty()) throw std::invalid_argument("set dynamics round on empty level");
  if (mode == RoundMode::kSweepIfIndependent) {
    for (Vertex v : L)
      for (Vertex u : g.adj[v])
        if (p.level_of[u] == level)
          throw std::invalid_argument("sweep mode requires an independent level");
    for (Vertex v : L) {
      const auto avail = available_colors(g, state.coloring, v);
      state.coloring.colors[v] = avail[state.rng.pick_index(avail.size())];
      ++state.steps;
    }
    return static_cast<long>(L.size());
  }
  const long budget = set_dynamics_round_budget(g, L.size());
  for (long t = 0; t < budget; ++t) glauber_step(state, g, L);
  return budget;
}

SetDynamicsStats run_set_dynamics(ChainState& state, const Graph& g,
                                  const LevelPartition& p, long rounds,
                                  RoundMode mode, bool record_frozen) {
  SetDynamicsStats stats;
  const double frozen_threshold =
      2.0 * std::pow(std::max(g.max_degree, 2), 1.0 - p.epsilon / 4.0);
  for (long i = 0; i < rounds; ++i) {
    const int j = static_cast<int>(i % p.m);
    RoundStat rs;
    rs.round = i;
    rs.level = j;
    if (!p.levels[j].empty()) {
      if (record_frozen) {
        for (Vertex v : p.levels[j]) {
          const auto a = available_colors(g, state.coloring, v).size();
          if (static_cast<double>(a) < frozen_threshold) ++rs.nearly_frozen_at_start;
        }
      }
      rs.updates = set_dynamics_round(state, g, p, j, mode);
    }
    stats.total_updates += rs.updates;
    stats.rounds.push_back(rs);
  }
  return stats;
}

Coloring greedy_coloring(const Graph& g, std::span<const Vertex> order,
                         std::span<const int> palette) {
  if (static_cast<int>(order.size()) != g.n)
    throw std::invalid_argument("order must cover all vertices");
  std::vector<int> sorted_palette(palette.begin(), palette.end());
  std::sort(sorted_palette.begin(), sorted_palette.end());
  Coloring c;
  c.k = sorted_palette.empty() ? 0 : sorted_palette.back();
  c.colors.assign(g.n, 0);
  for (Vertex v : order) {
    int chosen = 0;
    for (int cand : sorted_palette) {
      if (!conflicts(g, c.colors, v, cand)) {
        chosen = cand;
        break;
      }
    }
    if (chosen == 0)
      throw std::runtime_error("greedy coloring ran out of palette at vertex " +
                               std::to_string(v));
    c.colors[v] = chosen;
  }
  return c;
}

std::vector<Move> canonical_path(const Graph& g, const Coloring& from,
                                 const Coloring& to, const DegeneracyData& degen) {
  require_proper(g, from, "from");
  require_proper(g, to, "to");
  if (from.k != to.k) throw std::invalid_argument("palette sizes differ");
  const int d = degen.d;
  const int k = from.k;
  if (k < 2 * (d + 1))
    throw std::invalid_argument("canonical path needs k >= 2(d+1)");
  for (Vertex v = 0; v < g.n; ++v)
    if (to.colors[v] > d + 1)
      throw std::invalid_argument("target coloring must use colors {1..d+1}");
  if (from.colors == to.colors) return {};

  const int n = g.n;
  std::vector<int> cur = from.colors;
  std::vector<Move> moves;
  auto emit = [&](Vertex v, int c) {
    if (cur[v] == c) return;
    moves.push_back({v, cur[v], c});
    cur[v] = c;
  };
  for (int round = 1; round <= n; ++round) {
    const bool low_bank = ((n - round) % 2) == 0;  // round n uses {1..d+1}
    const int lo = low_bank ? 1 : d + 2;
    const int hi = low_bank ? d + 1 : 2 * d + 2;
    for (int j = round; j >= 1; --j) {
      const Vertex v = degen.order[j - 1];
      if (round == n) {
        // legal: vertices above v already carry `to`, vertices below carry
        // the other bank
        emit(v, to.colors[v]);
        continue;
      }
      if (cur[v] >= lo && cur[v] <= hi) continue;  // already in bank
      const int c = lowest_free_in_bank(g, cur, v, lo, hi);
      if (c == 0)
        throw std::logic_error("canonical path bank exhausted (invariant broken)");
      emit(v, c);
    }
  }
  return moves;
}

std::vector<Move> canonical_path_between(const Graph& g, const Coloring& a,
                                         const Coloring& b,
                                         const DegeneracyData& degen) {
  if (a.colors == b.colors) return {};
  std::vector<int> palette(degen.d + 1);
  for (int i = 0; i <= degen.d; ++i) palette[i] = i + 1;
  std::vector<Vertex> rev(degen.order.rbegin(), degen.order.rend());
  Coloring meet = greedy_coloring(g, rev, palette);
  meet.k = a.k;
  auto p1 = canonical_path(g, a, meet, degen);
  auto p2 = canonical_path(g, b, meet, degen);
  auto back = reverse_moves(p2);
  // collapse consecutive moves on the same vertex across the junction
  while (!p1.empty() && !back.empty() && p1.back().v == back.front().v) {
    Move merged{p1.back().v, p1.back().old_color, back.front().new_color};
    p1.pop_back();
    back.erase(back.begin());
    if (merged.old_color != merged.new_color) {
      p1.push_back(merged);
      break;
    }
  }
  p1.insert(p1.end(), back.begin(), back.end());
  return p1;
}

std::vector<std::vector<Vertex>> layered_sets(const Graph& g, int k) {
  const auto degen = degeneracy(g);
  if (k < 2 * degen.d + 2)
    throw std::invalid_argument("layered construction needs k >= 2d+2");
  std::vector<char> remaining(g.n, 1);
  std::vector<int> deg(g.n);
  for (Vertex v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  int left = g.n;
  std::vector<std::vector<Vertex>> sets;
  while (left > 0) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < g.n; ++v)
      if (remaining[v] && 2 * deg[v] <= k - 2) s.push_back(v);
    if (s.empty())
      throw std::runtime_error(
          "layered set construction stalled: every remaining vertex has more "
          "than k/2-1 remaining neighbors (k too small for degeneracy proxy)");
    for (Vertex v : s) {
      remaining[v] = 0;
      --left;
      for (Vertex u : g.adj[v])
        if (remaining[u]) --deg[u];
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

namespace {

// One-sided layered walk onto `target`, whose colors must avoid the high
// half {floor(k/2)+1..k}. Rounds 1..l alternate the half palettes analogous
// to the canonical walk (ending on the high half), and a final clearing
// round writes `target` outright; at that point every vertex holds a
// high-half color, so the low-half target colors never collide.
std::vector<Move> layered_walk(const Graph& g, const std::vector<int>& start,
                               const Coloring& target, int k,
                               const std::vector<std::vector<Vertex>>& sets) {
  const int half = k / 2;
  const int l = static_cast<int>(sets.size());
  std::vector<int> cur = start;
  std::vector<Move> moves;
  auto emit = [&](Vertex v, int c) {
    if (cur[v] == c) return;
    moves.push_back({v, cur[v], c});
    cur[v] = c;
  };
  for (int round = 1; round <= l; ++round) {
    const bool high = ((l - round) % 2) == 0;  // round l ends on the high half
    const int lo = high ? half + 1 : 1;
    const int hi = high ? k : half;
    for (int j = round; j >= 1; --j) {
      for (Vertex v : sets[j - 1]) {
        if (cur[v] >= lo && cur[v] <= hi) continue;  // already in this half
        const int c = lowest_free_in_bank(g, cur, v, lo, hi);
        if (c == 0)
          throw std::logic_error("layered walk half-palette exhausted");
        emit(v, c);
      }
    }
  }
  for (int j = l; j >= 1; --j)
    for (Vertex v : sets[j - 1]) emit(v, target.colors[v]);
  return moves;
}

}  // namespace

std::vector<Move> layered_path(const Graph& g, const Coloring& from,
                               const Coloring& to, int k) {
  require_proper(g, from, "from");
  require_proper(g, to, "to");
  if (from.k != k || to.k != k)
    throw std::invalid_argument("palette sizes must equal k");
  if (from.colors == to.colors) return {};
  const auto degen = degeneracy(g);
  const auto sets = layered_sets(g, k);
  const int half = k / 2;

  bool to_is_low = true;
  for (Vertex v = 0; v < g.n; ++v)
    if (to.colors[v] > half) to_is_low = false;
  if (to_is_low) return layered_walk(g, from.colors, to, k, sets);

  // Arbitrary target: meet at the greedy low-half coloring.
  std::vector<int> palette(degen.d + 1);
  for (int i = 0; i <= degen.d; ++i) palette[i] = i + 1;
  std::vector<Vertex> rev(degen.order.rbegin(), degen.order.rend());
  Coloring meet = greedy_coloring(g, rev, palette);
  meet.k = k;
  auto p1 = layered_walk(g, from.colors, meet, k, sets);
  auto p2 = layered_walk(g, to.colors, meet, k, sets);
  auto back = reverse_moves(p2);
  while (!p1.empty() && !back.empty() && p1.back().v == back.front().v) {
    Move merged{p1.back().v, p1.back().old_color, back.front().new_color};
    p1.pop_back();
    back.erase(back.begin());
    if (merged.old_color != merged.new_color) {
      p1.push_back(merged);
      break;
    }
  }
  p1.insert(p1.end(), back.begin(), back.end());
  return p1;
}

Coloring apply_moves(const Graph& g, Coloring start, std::span<const Move> moves) {
  require_proper(g, start, "start");
  for (const Move& m : moves) {
    if (start.colors[m.v] != m.old_color)
      throw std::runtime_error("move does not match current state");
    if (m.new_color < 1 || m.new_color > start.k)
      throw std::runtime_error("move color out of palette");
    start.colors[m.v] = m.new_color;
    for (Vertex u : g.adj[m.v])
      if (start.colors[u] == m.new_color)
        throw std::runtime_error("move creates a conflict at vertex " +
                                 std::to_string(m.v));
  }
  return start;
}

std::vector<Move> reverse_moves(std::span<const Move> moves) {
  std::vector<Move> out;
  out.reserve(moves.size());
  for (auto it = moves.rbegin(); it != moves.rend(); ++it)
    out.push_back({it->v, it->new_color, it->old_color});
  return out;
}

std::string coloring_to_json(const Coloring& c) {
  return nlohmann::json(c.colors).dump();
}

Coloring coloring_from_json(const std::string& text, int k) {
  Coloring c;
  c.k = k;
  c.colors = nlohmann::json::parse(text).get<std::vector<int>>();
  return c;
}

std::string moves_to_csv(std::span<const Move> moves) {
  std::ostringstream out;
  out << "step,vertex,old_color,new_color\n";
  long step = 0;
  for (const Move& m : moves)
    out << step++ << ',' << m.v << ',' << m.old_color << ',' << m.new_color << '\n';
  return out.str();
}

}  // namespace chromix
