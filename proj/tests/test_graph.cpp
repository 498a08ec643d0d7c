#include "chromix/graph.hpp"

#include <set>
#include <stdexcept>

#include "chromix/rng.hpp"
#include "doctest.h"

using namespace chromix;

TEST_CASE("edge list loading") {
  const Graph p3 = load_edge_list("0 1\n1 2");
  CHECK(p3.n == 3);
  CHECK(p3.edges.size() == 2);
  CHECK(p3.max_degree == 2);

  const Graph dup = load_edge_list("0 1\n0 1");
  CHECK(dup.n == 2);
  CHECK(dup.edges.size() == 1);

  CHECK_THROWS_WITH_AS(load_edge_list("0 0"), doctest::Contains("line 1"),
                       std::invalid_argument);
  CHECK_THROWS_AS(load_edge_list("0 -2"), std::invalid_argument);
  CHECK_THROWS_AS(load_edge_list("0 1 2"), std::invalid_argument);

  const Graph commented = load_edge_list("# header\n0 1 # tail\n\n2 1\n");
  CHECK(commented.n == 3);
  CHECK(commented.edges.size() == 2);
}

TEST_CASE("save/load round trip") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(20));
    std::vector<std::pair<Vertex, Vertex>> es;
    for (int i = 0; i < 2 * n; ++i) {
      const Vertex u = static_cast<Vertex>(rng.below(n));
      const Vertex v = static_cast<Vertex>(rng.below(n));
      if (u != v) es.emplace_back(u, v);
    }
    if (es.empty()) continue;
    const Graph g = Graph::from_edges(n, es);
    const Graph h = load_edge_list(save_edge_list(g));
    CHECK(h.edges == g.edges);
  }
}

TEST_CASE("grid generator") {
  const Graph c4 = gen_grid(2, 2);
  CHECK(c4.n == 4);
  CHECK(c4.edges.size() == 4);
  CHECK(c4.max_degree == 2);
  CHECK(c4.certified_planar);

  const Graph one = gen_grid(1, 1);
  CHECK(one.n == 1);
  CHECK(one.edges.empty());

  const Graph g33 = gen_grid(3, 3);
  CHECK(g33.n == 9);
  CHECK(g33.edges.size() == 12);
  CHECK(g33.max_degree == 4);

  CHECK_THROWS_AS(gen_grid(0, 3), std::invalid_argument);
}

TEST_CASE("complete tree generator") {
  const Graph t22 = gen_complete_tree(2, 2);
  CHECK(t22.n == 7);
  CHECK(t22.edges.size() == 6);
  CHECK(t22.max_degree == 3);

  const Graph leaf = gen_complete_tree(5, 0);
  CHECK(leaf.n == 1);
  CHECK(leaf.edges.empty());

  const Graph t43 = gen_complete_tree(4, 3);
  CHECK(t43.n == 85);
  // internal vertices have degree branching+1
  bool saw_internal = false;
  for (Vertex v = 1; v < t43.n; ++v)
    if (t43.degree(v) == 5) saw_internal = true;
  CHECK(saw_internal);
  CHECK(t43.degree(0) == 4);
}

TEST_CASE("planar triangulation generator") {
  const Graph k3 = gen_planar_triangulation(3, 1);
  CHECK(k3.n == 3);
  CHECK(k3.edges.size() == 3);

  const Graph k4 = gen_planar_triangulation(4, 5);
  CHECK(k4.n == 4);
  CHECK(k4.edges.size() == 6);

  const Graph t50 = gen_planar_triangulation(50, 7);
  CHECK(t50.edges.size() == 144);  // 3n - 6
  CHECK(t50.certified_planar);
  double avg = 2.0 * t50.edges.size() / t50.n;
  CHECK(avg < 6.0);

  CHECK_THROWS_AS(gen_planar_triangulation(2, 1), std::invalid_argument);
}

TEST_CASE("planar generator invariants over seeds") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = gen_planar_triangulation(40 + 10 * static_cast<int>(seed), seed);
    CHECK(g.edges.size() <= 3 * static_cast<std::size_t>(g.n) - 6);
    const auto degen = degeneracy(g);
    CHECK(degen.d <= 5);
  }
}

TEST_CASE("degeneracy data") {
  const Graph k3 = gen_planar_triangulation(3, 1);
  CHECK(degeneracy(k3).d == 2);

  const Graph tree = gen_complete_tree(3, 3);
  CHECK(degeneracy(tree).d == 1);

  const Graph g33 = gen_grid(3, 3);
  const auto dd = degeneracy(g33);
  CHECK(dd.d == 2);

  // independent oracle: max k with a nonempty k-core
  auto max_core = [](const Graph& g) {
    int best = 0;
    for (int k = 1; k <= g.max_degree; ++k) {
      std::vector<int> deg(g.n);
      std::vector<char> alive(g.n, 1);
      for (Vertex v = 0; v < g.n; ++v) deg[v] = g.degree(v);
      bool changed = true;
      while (changed) {
        changed = false;
        for (Vertex v = 0; v < g.n; ++v) {
          if (alive[v] && deg[v] < k) {
            alive[v] = 0;
            changed = true;
            for (Vertex u : g.adj[v])
              if (alive[u]) --deg[u];
          }
        }
      }
      for (Vertex v = 0; v < g.n; ++v)
        if (alive[v]) best = k;
    }
    return best;
  };
  CHECK(dd.d == max_core(g33));
  const Graph t60 = gen_planar_triangulation(60, 3);
  CHECK(degeneracy(t60).d == max_core(t60));

  // the order property: order[i] has at most d later neighbors
  for (std::size_t i = 0; i < dd.order.size(); ++i) {
    const Vertex v = dd.order[i];
    CHECK(dd.back_degree[v] <= dd.d);
  }
}

TEST_CASE("codegree") {
  const Graph c4 = gen_grid(2, 2);
  // opposite corners of C4 share both neighbors
  CHECK(codegree(c4, 0, 3) == 2);
  const Graph p3 = load_edge_list("0 1\n1 2");
  CHECK(codegree(p3, 0, 2) == 1);
  const Graph k4 = gen_planar_triangulation(4, 2);
  CHECK(codegree(k4, 0, 1) == 2);
  CHECK_THROWS_AS(codegree(c4, 1, 1), std::invalid_argument);
}
