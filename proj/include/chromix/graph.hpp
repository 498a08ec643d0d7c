#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chromix {

using Vertex = int;

// Immutable simple undirected graph. Adjacency lists are sorted, edges are
// stored once as (min,max) pairs in lexicographic order.
struct Graph {
  int n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<Vertex>> adj;
  int max_degree = 0;
  // Set only by the generators that construct planar graphs by design.
  bool certified_planar = false;

  int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;

  // Deduplicates edges, builds sorted adjacency. Throws on self-loops or
  // ids outside [0, n).
  static Graph from_edges(int n, std::vector<std::pair<Vertex, Vertex>> es,
                          bool certified_planar = false);
};

// Edge-list text format: one "u v" pair per line, '#' starts a comment,
// ids are 0-based; n is 1 + the largest id seen.
Graph load_edge_list(const std::string& text);
std::string save_edge_list(const Graph& g);

Graph gen_grid(int w, int h);
Graph gen_complete_tree(int branching, int depth);

// Maximal planar graph grown by repeatedly placing a new vertex inside a
// uniformly random face of the current triangulation. |E| = 3n - 6.
Graph gen_planar_triangulation(int n, std::uint64_t seed);

// Greedy minimum-degree peeling order (lowest id breaks ties).
// order[i] has at most d neighbors among order[i+1..n-1].
struct DegeneracyData {
  std::vector<Vertex> order;
  int d = 0;
  std::vector<int> back_degree;  // per vertex: neighbors later in order
  std::vector<int> position;     // inverse of order
};

DegeneracyData degeneracy(const Graph& g);

// |N(u) ∩ N(v)|; u and v must differ.
int codegree(const Graph& g, Vertex u, Vertex v);

}  // namespace chromix
