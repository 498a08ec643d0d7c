#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chromix/graph.hpp"

namespace chromix {

// Principal eigenvector data of the perturbed adjacency matrix
// A~ = A + (rho_hat/n) J. w is normalized to unit 1-norm and strictly
// positive; rho_tilde and rho_hat are Rayleigh values of w under A~ and A.
struct EigenData {
  std::vector<double> w;
  double rho_tilde = 0.0;
  double rho_hat = 0.0;
  double perturbation = 0.0;  // the rho/n coefficient actually used for A~
  int iterations = 0;
  double residual = 0.0;
  double tolerance = 0.0;

  double w_min() const;
};

struct PowerOptions {
  double tolerance = 1e-8;
  int max_iters = 100000;
  std::uint64_t seed = 1;
};

// Two phases: estimate rho on A (shifted by +I so bipartite spectra do not
// oscillate), then iterate on A~ built from that estimate. Deterministic
// given the seed. Throws if the residual target is not met in max_iters.
EigenData power_iterate(const Graph& g, const PowerOptions& opt = {});

// Largest epsilon with rho' = rho_hat*(1+tolerance) = Delta^(1-eps).
// Throws "no spectral gap" when rho' >= Delta. Requires Delta >= 2.
double choose_epsilon(const Graph& g, const EigenData& eigen,
                      double tolerance = 1e-8);

// Level sets L_i = { v : Delta^(i*eps/2) <= w(v)/w_min < Delta^((i+1)*eps/2) }.
// Levels may be empty in the middle of the range; m is 1 + the highest
// occupied index.
struct LevelPartition {
  double epsilon = 0.0;
  int m = 0;
  std::vector<std::vector<Vertex>> levels;
  std::vector<int> level_of;
  std::vector<double> weights;  // copy of the eigenvector the levels came from
};

// Throws (with a witness vertex) if the up-neighbor bound
// |N(v) \ L_{<i}| < Delta^(1-eps/2) fails for some vertex.
LevelPartition build_levels(const Graph& g, const EigenData& eigen, double epsilon);

struct PartitionReport {
  bool pass = true;
  // expansion: per-vertex |N(v) \ L_{<i}| < Delta^(1-eps/2)
  std::vector<Vertex> expansion_witnesses;
  // level count m <= (2/eps) ln(2n)/ln(Delta)
  bool level_count_ok = true;
  double level_count_bound = 0.0;
  // per-vertex w(N(u)) <= rho_tilde * w(u) (+ tolerance slack)
  std::vector<Vertex> weight_witnesses;
  std::string summary() const;
};

PartitionReport verify_partition(const LevelPartition& p, const Graph& g,
                                 const EigenData& eigen);

std::string partition_to_json(const LevelPartition& p);

}  // namespace chromix
