#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chromix/dynamics.hpp"
#include "chromix/graph.hpp"
#include "chromix/rng.hpp"
#include "chromix/spectral.hpp"

namespace chromix {

// Two chains under Jerrum's coupling: same vertex each step, colors
// maximally coupled. D is the disagreement set, wD its weighted size.
struct CoupledState {
  Coloring X, Y;
  Rng rng;
  std::vector<double> weights;  // unit weights if not supplied
  std::vector<char> in_disagreement;
  int disagreement_count = 0;
  double wD = 0.0;
  long steps = 0;

  CoupledState(Coloring x, Coloring y, std::uint64_t seed,
               std::vector<double> w = {});

  // Recomputes D and wD by full scan (consistency checks in tests).
  double rescan_wD() const;
  std::vector<Vertex> disagreement_set() const;
};

struct DriftRecord {
  long t;
  double wD_before;
  double wD_after;
  Vertex v;
  bool created;
  bool destroyed;
};

// One coupled update. Both chains pick the same vertex; the two uniform
// color draws are maximally coupled with one RNG draw (matched mass first,
// residual colors paired by sorted rank). Returns the record of the step.
DriftRecord jerrum_coupled_step(CoupledState& cs, const Graph& g);
DriftRecord jerrum_coupled_step(CoupledState& cs, const Graph& g,
                                std::span<const Vertex> restrict_to);

struct CouplingSchedule {
  enum class Kind { kGlauber, kSetDynamics };
  Kind kind = Kind::kGlauber;
  long steps = 0;                           // Glauber: total coupled updates
  long rounds = 0;                          // set dynamics: round count
  const LevelPartition* partition = nullptr;  // required for set dynamics
};

struct CouplingRun {
  std::vector<std::pair<long, double>> trajectory;  // (t, wD) at stride
  std::optional<long> coalesced_at;                 // vertex updates until wD = 0
  long total_updates = 0;
  std::vector<DriftRecord> drift;
};

struct CouplingOptions {
  long trajectory_stride = 1;  // 0 disables trajectory recording
  bool record_drift = false;
  bool stop_at_coalescence = true;
};

CouplingRun run_coupling(CoupledState& cs, const Graph& g,
                         const CouplingSchedule& schedule,
                         const CouplingOptions& opt = {});

// Approximately uniform colorings for estimators; see make_chain_source.
using StationarySource = std::function<Coloring(Rng&)>;

// Exact sampler backed by an enumerated state list.
StationarySource make_exact_source(const std::vector<std::vector<int>>& states, int k);

// Long-run Glauber: burn-in 50 n ln n updates once, then n ln n between
// samples. `start` must be proper.
StationarySource make_chain_source(const Graph& g, const Coloring& start);

struct ContractionStats {
  int samples = 0;
  double mean_drift = 0.0;  // E[w(D_1) - w(D_0)] per step, single disagreement
  double se_drift = 0.0;
  double mean_bound = 0.0;  // Eq-style bound from measured availabilities
  double se_bound = 0.0;
};

// Single-disagreement one-step drift. Per sample: Y from the source, X = Y
// with one vertex recolored to another available color (uniform over the
// valid (vertex,color) choices; `disagree_at` pins the vertex). The drift is
// the exact conditional expectation over the coupled update, so only the
// start is random. Samples where no disagreement can be planted contribute
// zero drift (fully frozen states).
ContractionStats contraction_estimate(const Graph& g, std::span<const double> weights,
                                      int k, int samples,
                                      const StationarySource& source, Rng& rng,
                                      std::optional<Vertex> disagree_at = {});

// Exact conditional drift E[w(D_{t+1}) - w(D_t) | X, Y] of one coupled step.
double one_step_drift(const Graph& g, std::span<const double> weights,
                      const Coloring& X, const Coloring& Y);

// Replays drift records from `initial` and attributes every disagreement to
// an origin in the initial set (new disagreements inherit the lowest origin
// id among their disagreeing neighbors). Returns the final disagreement set
// grouped by origin.
std::map<Vertex, std::vector<Vertex>> track_disagreement_origins(
    const Graph& g, std::span<const Vertex> initial,
    std::span<const DriftRecord> records);

std::string trajectory_to_csv(std::uint64_t seed, const CouplingRun& run);
std::string drift_to_csv(std::uint64_t seed, std::span<const DriftRecord> records);

}  // namespace chromix
