#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chromix/dynamics.hpp"
#include "chromix/graph.hpp"

namespace chromix {

// Brute-force ground truth on tiny instances: the full state space of
// proper k-colorings with the exact Glauber transition matrix.
struct ExactModel {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> states;   // lexicographic order
  std::vector<std::vector<double>> P;     // row-stochastic, symmetric
  std::vector<int> component;             // Glauber-move component per state
  int component_count = 0;

  std::size_t size() const { return states.size(); }
  bool connected() const { return component_count <= 1; }
  // Index of a coloring in `states` (binary search); -1 if absent.
  long state_index(std::span<const int> colors) const;
};

// Enumerates all proper k-colorings by backtracking in vertex order.
// Throws once more than `budget` states have been found.
ExactModel enumerate_colorings(const Graph& g, int k, long budget = 1'000'000);

// P[s][s'] = (1/n) * sum_v [s' differs from s only at v] / a_s(v), with the
// matching self-loop mass. Also labels Glauber components.
void build_transition_matrix(ExactModel& model, const Graph& g);

// 0.5 * L1 distance. Both arguments must be distributions on the same
// support (checked to 1e-9).
double exact_tv(std::span<const double> p, std::span<const double> q);

struct MixingResult {
  enum class Status { kMixed, kDisconnected, kLowerBound };
  Status status = Status::kMixed;
  long t = 0;  // mixing time, or the 2^20 cap when status == kLowerBound
};

// Smallest t with max_s TV(P^t(s,.), uniform) <= threshold, by repeated
// squaring and binary search (TV to stationarity is monotone in t).
MixingResult exact_mixing_time(const ExactModel& model, double threshold = 0.25);

// Max BFS eccentricity of the Glauber move graph; nullopt if disconnected.
std::optional<long> exact_diameter(const ExactModel& model, const Graph& g);

// {omega_size, connected, diameter, mixing_time, stationary_ok}
std::string oracle_report_json(const ExactModel& model, const Graph& g);

}  // namespace chromix
