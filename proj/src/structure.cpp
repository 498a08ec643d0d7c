#include "chromix/structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace chromix {

namespace {

// Checks that the given edge subset is acyclic (union-find).
bool edges_acyclic(int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                   const std::vector<int>& assignment, int slot) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (assignment[e] != slot) continue;
    const int a = find(edges[e].first), b = find(edges[e].second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace

ForestCover forest_decomposition(const Graph& g, const DegeneracyData& degen) {
  ForestCover cover;
  cover.forest_of_edge.assign(g.edges.size(), 0);
  std::map<std::pair<Vertex, Vertex>, int> edge_index;
  for (std::size_t e = 0; e < g.edges.size(); ++e) edge_index[g.edges[e]] = static_cast<int>(e);
  int max_slot = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    int slot = 0;
    for (Vertex u : g.adj[v]) {
      if (degen.position[u] <= degen.position[v]) continue;  // later-only
      const auto key = std::make_pair(std::min(u, v), std::max(u, v));
      cover.forest_of_edge[edge_index[key]] = slot;
      max_slot = std::max(max_slot, slot);
      ++slot;
    }
  }
  cover.f = max_slot + 1;
  // Slots are acyclic already (every edge is owned by its earlier endpoint,
  // so a cycle would need a strictly increasing peeling position all the way
  // around); the scan repairs to a spare slot if that ever breaks.
  for (int slot = 0; slot < cover.f; ++slot) {
    while (!edges_acyclic(g.n, g.edges, cover.forest_of_edge, slot)) {
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (cover.forest_of_edge[e] == slot) {
          cover.forest_of_edge[e] = cover.f;
          break;
        }
      }
    }
  }
  if (std::find(cover.forest_of_edge.begin(), cover.forest_of_edge.end(),
                cover.f) != cover.forest_of_edge.end())
    cover.f += 1;
  return cover;
}

namespace {

// Per-forest vertex labels: depth mod 3 from the lowest-id root of each tree.
std::vector<int> forest_depth_labels(const Graph& g,
                                     const std::vector<std::pair<Vertex, Vertex>>& edges,
                                     const std::vector<int>& assignment, int slot) {
  std::vector<std::vector<Vertex>> adj(g.n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (assignment[e] != slot) continue;
    adj[edges[e].first].push_back(edges[e].second);
    adj[edges[e].second].push_back(edges[e].first);
  }
  std::vector<int> label(g.n, -1);
  for (Vertex r = 0; r < g.n; ++r) {
    if (label[r] != -1) continue;
    // r is the lowest id in its tree because vertices are scanned in order
    label[r] = 0;
    std::deque<Vertex> q{r};
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop_front();
      for (Vertex u : adj[v]) {
        if (label[u] == -1) {
          label[u] = (label[v] + 1) % 3;
          q.push_back(u);
        }
      }
    }
  }
  return label;
}

}  // namespace

StructSubset struct_subset(const Graph& g, std::span<const Vertex> U,
                           const ForestCover& cover) {
  if (U.empty()) throw std::invalid_argument("U must be nonempty");
  std::vector<std::vector<int>> labels(cover.f);
  for (int slot = 0; slot < cover.f; ++slot)
    labels[slot] = forest_depth_labels(g, g.edges, cover.forest_of_edge, slot);
  std::map<std::vector<int>, std::vector<Vertex>> classes;
  for (Vertex u : U) {
    std::vector<int> key(cover.f);
    for (int slot = 0; slot < cover.f; ++slot) key[slot] = labels[slot][u];
    classes[key].push_back(u);
  }
  StructSubset out;
  for (const auto& [key, members] : classes)
    if (members.size() > out.kept.size()) out.kept = members;
  out.ratio = static_cast<double>(out.kept.size()) / U.size();

  const double size_bound = U.size() * std::pow(3.0, -cover.f);
  if (static_cast<double>(out.kept.size()) < size_bound)
    throw std::runtime_error("struct subset smaller than the 3^-f share");

  std::vector<char> in_kept(g.n, 0);
  for (Vertex u : out.kept) in_kept[u] = 1;
  for (Vertex u : out.kept) {
    // common neighborhood with the rest of U'
    int common = 0;
    for (Vertex w : g.adj[u]) {
      bool other = false;
      for (Vertex x : g.adj[w]) {
        if (x != u && in_kept[x]) {
          other = true;
          break;
        }
      }
      common += other;
    }
    out.max_common = std::max(out.max_common, common);
    if (common > cover.f)
      throw std::runtime_error("struct subset common-neighborhood bound failed at vertex " +
                               std::to_string(u) + " (" + std::to_string(common) +
                               " > " + std::to_string(cover.f) + ")");
  }
  return out;
}

std::vector<Vertex> descendants(const Graph& g, const LevelPartition& p, Vertex v,
                                int span) {
  std::vector<Vertex> out;
  if (span <= 0) return out;
  const int floor_level = p.level_of[v] - span;
  std::vector<char> seen(g.n, 0);
  std::deque<Vertex> q{v};
  seen[v] = 1;
  while (!q.empty()) {
    const Vertex w = q.front();
    q.pop_front();
    for (Vertex u : g.adj[w]) {
      if (seen[u] || p.level_of[u] >= p.level_of[w]) continue;  // down steps only
      if (p.level_of[u] < floor_level) continue;
      seen[u] = 1;
      out.push_back(u);
      q.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int level_span(const Graph& g, const LevelPartition& p) {
  int span = 0;
  for (auto [u, v] : g.edges)
    span = std::max(span, std::abs(p.level_of[u] - p.level_of[v]));
  return span;
}

std::string forest_to_json(const Graph& g, const ForestCover& cover) {
  nlohmann::json j;
  j["f"] = cover.f;
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    edges.push_back({g.edges[e].first, g.edges[e].second, cover.forest_of_edge[e]});
  j["edges"] = edges;
  return j.dump(2);
}

}  // namespace chromix
