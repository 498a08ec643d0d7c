#include "chromix/graph.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chromix/rng.hpp"

namespace chromix {

namespace {

constexpr long kGeneratorSizeBudget = 10'000'000;

std::pair<Vertex, Vertex> norm_edge(Vertex u, Vertex v) {
  return {std::min(u, v), std::max(u, v)};
}

}  // namespace

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& nu = adj[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

Graph Graph::from_edges(int n, std::vector<std::pair<Vertex, Vertex>> es,
                        bool certified_planar) {
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
  Graph g;
  g.n = n;
  g.certified_planar = certified_planar;
  for (auto& [u, v] : es) {
    if (u == v) throw std::invalid_argument("self-loop not allowed");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("vertex id out of range");
  }
  for (auto& e : es) e = norm_edge(e.first, e.second);
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  g.edges = std::move(es);
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nb : g.adj) {
    std::sort(nb.begin(), nb.end());
    g.max_degree = std::max<int>(g.max_degree, static_cast<int>(nb.size()));
  }
  return g;
}

Graph load_edge_list(const std::string& text) {
  std::vector<std::pair<Vertex, Vertex>> es;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Vertex max_id = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    std::string tail;
    if (!(ls >> v) || (ls >> tail)) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected exactly two vertex ids");
    }
    if (u == v)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": self-loop " + std::to_string(u));
    if (u < 0 || v < 0)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": vertex id out of range");
    es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id = std::max({max_id, static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph::from_edges(max_id + 1, std::move(es));
}

std::string save_edge_list(const Graph& g) {
  std::ostringstream out;
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

Graph gen_grid(int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("grid sides must be >= 1");
  if (static_cast<long>(w) * h > kGeneratorSizeBudget)
    throw std::invalid_argument("grid exceeds size budget");
  auto id = [w](int x, int y) { return y * w + x; };
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) es.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < h) es.emplace_back(id(x, y), id(x, y + 1));
    }
  return Graph::from_edges(w * h, std::move(es), /*certified_planar=*/true);
}

Graph gen_complete_tree(int branching, int depth) {
  if (branching < 1 || depth < 0)
    throw std::invalid_argument("branching must be >= 1 and depth >= 0");
  long total = 1, layer = 1;
  for (int i = 0; i < depth; ++i) {
    layer *= branching;
    total += layer;
    if (total > kGeneratorSizeBudget)
      throw std::invalid_argument("tree exceeds size budget");
  }
  std::vector<std::pair<Vertex, Vertex>> es;
  // children of vertex v are b*v+1 .. b*v+b in BFS numbering
  for (Vertex v = 0; static_cast<long>(v) * branching + 1 < total; ++v)
    for (int c = 1; c <= branching; ++c) {
      const long child = static_cast<long>(v) * branching + c;
      if (child >= total) break;
      es.emplace_back(v, static_cast<Vertex>(child));
    }
  return Graph::from_edges(static_cast<int>(total), std::move(es),
                           /*certified_planar=*/true);
}

Graph gen_planar_triangulation(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("triangulation needs n >= 3");
  if (n > kGeneratorSizeBudget)
    throw std::invalid_argument("triangulation exceeds size budget");
  Rng rng(Rng::mix(seed));
  std::vector<std::pair<Vertex, Vertex>> es = {{0, 1}, {0, 2}, {1, 2}};
  // Both sides of the starting triangle are faces of the embedding.
  std::vector<std::array<Vertex, 3>> faces = {{0, 1, 2}, {0, 1, 2}};
  faces.reserve(2 * n);
  es.reserve(3 * n);
  for (Vertex v = 3; v < n; ++v) {
    const auto idx = rng.below(faces.size());
    const auto [a, b, c] = faces[idx];
    es.emplace_back(v, a);
    es.emplace_back(v, b);
    es.emplace_back(v, c);
    faces[idx] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({a, c, v});
  }
  return Graph::from_edges(n, std::move(es), /*certified_planar=*/true);
}

DegeneracyData degeneracy(const Graph& g) {
  DegeneracyData data;
  data.order.reserve(g.n);
  data.back_degree.assign(g.n, 0);
  data.position.assign(g.n, -1);
  std::vector<int> deg(g.n);
  // (degree, id) ordering makes the peeling deterministic: lowest id wins ties.
  std::set<std::pair<int, Vertex>> pq;
  for (Vertex v = 0; v < g.n; ++v) {
    deg[v] = g.degree(v);
    pq.insert({deg[v], v});
  }
  std::vector<char> removed(g.n, 0);
  int d = 0;
  while (!pq.empty()) {
    const auto [dv, v] = *pq.begin();
    pq.erase(pq.begin());
    d = std::max(d, dv);
    removed[v] = 1;
    data.position[v] = static_cast<int>(data.order.size());
    data.order.push_back(v);
    for (Vertex u : g.adj[v]) {
      if (removed[u]) continue;
      pq.erase({deg[u], u});
      --deg[u];
      pq.insert({deg[u], u});
    }
  }
  data.d = d;
  for (Vertex v = 0; v < g.n; ++v)
    for (Vertex u : g.adj[v])
      if (data.position[u] > data.position[v]) ++data.back_degree[v];
  return data;
}

int codegree(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("codegree needs distinct vertices");
  const auto& a = g.adj[u];
  const auto& b = g.adj[v];
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (a[i] > b[j])
      ++j;
    else
      ++count, ++i, ++j;
  }
  return count;
}

}  // namespace chromix
