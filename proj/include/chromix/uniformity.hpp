#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chromix/coupling.hpp"
#include "chromix/dynamics.hpp"
#include "chromix/graph.hpp"
#include "chromix/spectral.hpp"

namespace chromix {

// Nearly frozen vertices of one level: a(v) < 2 * Delta^(1 - theta), where
// theta defaults to eps/4 from the partition.
std::vector<Vertex> frozen_sets(const Graph& g, const Coloring& c,
                                const LevelPartition& p, int level,
                                std::optional<double> threshold_exponent = {});

struct UniformityReport {
  int samples = 0;
  int k = 0;
  double threshold = 0.0;                 // nearly-frozen cutoff on a(v)
  std::map<int, long> availability_hist;  // a(v) -> count over all samples
  int min_available = 0;
  double mean_available = 0.0;
  double frozen_per_sample = 0.0;         // mean #{v : a(v) = 1}
  double nearly_frozen_per_sample = 0.0;  // mean #{v : a(v) < threshold}
};

UniformityReport uniformity_report(const Graph& g, int k, int samples,
                                   double threshold, const StationarySource& source,
                                   Rng& rng);

std::string uniformity_report_json(const UniformityReport& r);

struct AvailabilityCheck {
  int samples = 0;
  double weak_threshold = 0.0;   // Delta^(1 - eps/2)
  double weak_violation_freq = 0.0;  // P[exists v: a(v) < weak_threshold]
  double strong_threshold = 0.0;  // (1/2) k e^(-Delta/k)
  double strong_half_freq = 0.0;  // P[exists v below 1/2 k e^(-Delta/k)]
  double strong_9_10_freq = 0.0;
  double strong_8_10_freq = 0.0;
  double n4_target = 0.0;  // n^-4 comparison value
};

// Frequency of availability violations under (approximately) uniform
// colorings; the asymptotic n^-4 bound is reported, not asserted.
AvailabilityCheck lemma31_check(const Graph& g, int k, int samples, double epsilon,
                                const StationarySource& source, Rng& rng);

struct RecolorTrace {
  Coloring final;
  std::vector<int> availability;  // a(s_j) at each redraw
};

// Sequentially redraws each vertex of S uniformly from its current
// available set. Distribution-preserving when the input is uniform.
RecolorTrace recolor_experiment(const Graph& g, const Coloring& y,
                                std::span<const Vertex> S, std::uint64_t seed);

struct CodegreeSplit {
  std::vector<Vertex> low;        // S: lower-level, low co-degree neighbors
  std::vector<Vertex> high;       // the rest of N(v)
  double codegree_threshold = 0.0;  // rho * Delta^(eps/2)
  double high_bound = 0.0;          // 2 * Delta^(1 - eps/2)
};

// Splits N(v) for v in level i+1 into the low co-degree lower-level part and
// the remainder; throws if the remainder exceeds 2 Delta^(1-eps/2).
CodegreeSplit select_low_codegree_set(const Graph& g, Vertex v,
                                      const LevelPartition& p,
                                      const EigenData& eigen, int level_i);

}  // namespace chromix
