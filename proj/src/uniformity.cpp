#include "chromix/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace chromix {

std::vector<Vertex> frozen_sets(const Graph& g, const Coloring& c,
                                const LevelPartition& p, int level,
                                std::optional<double> threshold_exponent) {
  if (level < 0 || level >= p.m) throw std::invalid_argument("level out of range");
  const double theta = threshold_exponent.value_or(p.epsilon / 4.0);
  const double threshold =
      2.0 * std::pow(std::max(g.max_degree, 2), 1.0 - theta);
  std::vector<Vertex> out;
  for (Vertex v : p.levels[level]) {
    const auto a = available_colors(g, c, v).size();
    if (static_cast<double>(a) < threshold) out.push_back(v);
  }
  return out;
}

UniformityReport uniformity_report(const Graph& g, int k, int samples,
                                   double threshold, const StationarySource& source,
                                   Rng& rng) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  UniformityReport r;
  r.samples = samples;
  r.k = k;
  r.threshold = threshold;
  r.min_available = k;
  long total = 0, frozen = 0, nearly = 0;
  for (int s = 0; s < samples; ++s) {
    const Coloring c = source(rng);
    for (Vertex v = 0; v < g.n; ++v) {
      const int a = static_cast<int>(available_colors(g, c, v).size());
      ++r.availability_hist[a];
      total += a;
      r.min_available = std::min(r.min_available, a);
      if (a == 1) ++frozen;
      if (a < threshold) ++nearly;
    }
  }
  r.mean_available = static_cast<double>(total) / (static_cast<long>(samples) * g.n);
  r.frozen_per_sample = static_cast<double>(frozen) / samples;
  r.nearly_frozen_per_sample = static_cast<double>(nearly) / samples;
  return r;
}

std::string uniformity_report_json(const UniformityReport& r) {
  nlohmann::json j;
  j["samples"] = r.samples;
  j["k"] = r.k;
  j["threshold"] = r.threshold;
  nlohmann::json hist = nlohmann::json::object();
  for (auto [a, count] : r.availability_hist) hist[std::to_string(a)] = count;
  j["availability_histogram"] = hist;
  j["min_available"] = r.min_available;
  j["mean_available"] = r.mean_available;
  j["frozen_per_sample"] = r.frozen_per_sample;
  j["nearly_frozen_per_sample"] = r.nearly_frozen_per_sample;
  return j.dump(2);
}

AvailabilityCheck lemma31_check(const Graph& g, int k, int samples, double epsilon,
                                const StationarySource& source, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  AvailabilityCheck r;
  r.samples = samples;
  const double delta = std::max(g.max_degree, 2);
  r.weak_threshold = std::pow(delta, 1.0 - epsilon / 2.0);
  r.strong_threshold = 0.5 * k * std::exp(-delta / k);
  const double s9 = 0.9 * k * std::exp(-delta / k);
  const double s8 = 0.8 * k * std::exp(-delta / k);
  r.n4_target = std::pow(static_cast<double>(g.n), -4.0);
  long weak = 0, half = 0, n9 = 0, n8 = 0;
  for (int s = 0; s < samples; ++s) {
    const Coloring c = source(rng);
    bool vw = false, vh = false, v9 = false, v8 = false;
    for (Vertex v = 0; v < g.n; ++v) {
      const double a = static_cast<double>(available_colors(g, c, v).size());
      vw |= a < r.weak_threshold;
      vh |= a < r.strong_threshold;
      v9 |= a < s9;
      v8 |= a < s8;
    }
    weak += vw;
    half += vh;
    n9 += v9;
    n8 += v8;
  }
  r.weak_violation_freq = static_cast<double>(weak) / samples;
  r.strong_half_freq = static_cast<double>(half) / samples;
  r.strong_9_10_freq = static_cast<double>(n9) / samples;
  r.strong_8_10_freq = static_cast<double>(n8) / samples;
  return r;
}

RecolorTrace recolor_experiment(const Graph& g, const Coloring& y,
                                std::span<const Vertex> S, std::uint64_t seed) {
  if (!is_proper(g, y)) throw std::invalid_argument("input coloring must be proper");
  std::vector<char> seen(g.n, 0);
  for (Vertex v : S) {
    if (seen[v]) throw std::invalid_argument("recolor sequence repeats a vertex");
    seen[v] = 1;
  }
  RecolorTrace tr;
  tr.final = y;
  Rng rng(Rng::mix(seed));
  for (Vertex v : S) {
    const auto avail = available_colors(g, tr.final, v);
    tr.availability.push_back(static_cast<int>(avail.size()));
    tr.final.colors[v] = avail[rng.pick_index(avail.size())];
  }
  return tr;
}

CodegreeSplit select_low_codegree_set(const Graph& g, Vertex v,
                                      const LevelPartition& p,
                                      const EigenData& eigen, int level_i) {
  if (p.level_of[v] != level_i + 1)
    throw std::invalid_argument("vertex must sit one level above level_i");
  const double delta = std::max(g.max_degree, 2);
  CodegreeSplit split;
  split.codegree_threshold =
      eigen.rho_hat * std::pow(delta, p.epsilon / 2.0);
  split.high_bound = 2.0 * std::pow(delta, 1.0 - p.epsilon / 2.0);
  for (Vertex u : g.adj[v]) {
    if (p.level_of[u] <= level_i &&
        codegree(g, u, v) <= split.codegree_threshold)
      split.low.push_back(u);
    else
      split.high.push_back(u);
  }
  if (static_cast<double>(split.high.size()) > split.high_bound * (1 + 1e-9))
    throw std::runtime_error(
        "co-degree split bound violated at vertex " + std::to_string(v) + ": " +
        std::to_string(split.high.size()) + " residual neighbors exceed " +
        std::to_string(split.high_bound));
  return split;
}

}  // namespace chromix
