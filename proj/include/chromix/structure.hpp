#pragma once

#include <span>
#include <string>
#include <vector>

#include "chromix/graph.hpp"
#include "chromix/spectral.hpp"

namespace chromix {

// Edge partition into f forests, indexed parallel to Graph::edges.
struct ForestCover {
  int f = 0;
  std::vector<int> forest_of_edge;
};

// Assigns each vertex's edges-to-later-peeling-order neighbors (at most d of
// them) to slots 1..d; the slot assignment is acyclic by construction and a
// verification scan guards it, with a spare slot for repairs. f <= d+1.
ForestCover forest_decomposition(const Graph& g, const DegeneracyData& degen);

struct StructSubset {
  std::vector<Vertex> kept;  // U', the largest color-class of U
  double ratio = 0.0;        // |U'| / |U|
  int max_common = 0;        // max_u |N(u) ∩ N(U'\{u})|
};

// 3-colors every forest by depth mod 3 from each tree's lowest-id root,
// classifies U by color vector and keeps the largest class. Verifies
// directly that |U'| >= |U| 3^-f and |N(u) ∩ N(U'\{u})| <= f for all kept u;
// throws with a witness otherwise.
StructSubset struct_subset(const Graph& g, std::span<const Vertex> U,
                           const ForestCover& cover);

// Descendants of v reached by repeated strictly-down-level steps, truncated
// at level(v) - span.
std::vector<Vertex> descendants(const Graph& g, const LevelPartition& p, Vertex v,
                                int span);

// Max |level(u) - level(v)| over edges.
int level_span(const Graph& g, const LevelPartition& p);

std::string forest_to_json(const Graph& g, const ForestCover& cover);

}  // namespace chromix
