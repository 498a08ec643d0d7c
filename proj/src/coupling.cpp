#include "chromix/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace chromix {

namespace {

void update_membership(CoupledState& cs, Vertex v, bool* created, bool* destroyed) {
  const bool differs = cs.X.colors[v] != cs.Y.colors[v];
  const bool was = cs.in_disagreement[v];
  *created = differs && !was;
  *destroyed = !differs && was;
  if (*created) {
    cs.in_disagreement[v] = 1;
    ++cs.disagreement_count;
    cs.wD += cs.weights[v];
  } else if (*destroyed) {
    cs.in_disagreement[v] = 0;
    --cs.disagreement_count;
    cs.wD -= cs.weights[v];
    if (cs.disagreement_count == 0) cs.wD = 0.0;  // clear accumulated error
  }
}

// Maximal coupling of Uniform(ax) and Uniform(ay) realized from a single
// uniform draw over ax.size()*ay.size() units. Matched colors carry
// min(|ax|,|ay|) units each; residual unit layouts pair by sorted rank.
std::pair<int, int> coupled_draw(const std::vector<int>& ax,
                                 const std::vector<int>& ay, Rng& rng) {
  const std::size_t sx = ax.size(), sy = ay.size();
  std::vector<int> common;
  std::set_intersection(ax.begin(), ax.end(), ay.begin(), ay.end(),
                        std::back_inserter(common));
  const std::uint64_t unit = std::min(sx, sy);
  const std::uint64_t matched = common.size() * unit;
  std::uint64_t r = rng.below(sx * sy);
  if (r < matched) {
    const int c = common[r / unit];
    return {c, c};
  }
  r -= matched;
  // residual multiplicity: |ay| - unit for common colors on the X side,
  // |ay| for X-only colors (mirrored for Y)
  auto locate = [&](const std::vector<int>& side, std::uint64_t other,
                    std::uint64_t t) {
    for (int c : side) {
      const bool is_common = std::binary_search(common.begin(), common.end(), c);
      const std::uint64_t mult = other - (is_common ? unit : 0);
      if (t < mult) return c;
      t -= mult;
    }
    throw std::logic_error("coupled draw residual out of range");
  };
  return {locate(ax, sy, r), locate(ay, sx, r)};
}

}  // namespace

CoupledState::CoupledState(Coloring x, Coloring y, std::uint64_t seed,
                           std::vector<double> w)
    : X(std::move(x)), Y(std::move(y)), rng(Rng::mix(seed)), weights(std::move(w)) {
  if (X.colors.size() != Y.colors.size() || X.k != Y.k)
    throw std::invalid_argument("coupled chains need matching shape and palette");
  if (weights.empty()) weights.assign(X.colors.size(), 1.0);
  if (weights.size() != X.colors.size())
    throw std::invalid_argument("weight vector does not match graph");
  in_disagreement.assign(X.colors.size(), 0);
  for (std::size_t v = 0; v < X.colors.size(); ++v) {
    if (X.colors[v] != Y.colors[v]) {
      in_disagreement[v] = 1;
      ++disagreement_count;
      wD += weights[v];
    }
  }
}

double CoupledState::rescan_wD() const {
  double s = 0;
  for (std::size_t v = 0; v < X.colors.size(); ++v)
    if (X.colors[v] != Y.colors[v]) s += weights[v];
  return s;
}

std::vector<Vertex> CoupledState::disagreement_set() const {
  std::vector<Vertex> d;
  for (std::size_t v = 0; v < X.colors.size(); ++v)
    if (in_disagreement[v]) d.push_back(static_cast<Vertex>(v));
  return d;
}

DriftRecord jerrum_coupled_step(CoupledState& cs, const Graph& g) {
  static thread_local std::vector<Vertex> whole;
  if (static_cast<int>(whole.size()) != g.n) {
    whole.resize(g.n);
    for (Vertex v = 0; v < g.n; ++v) whole[v] = v;
  }
  return jerrum_coupled_step(cs, g, whole);
}

DriftRecord jerrum_coupled_step(CoupledState& cs, const Graph& g,
                                std::span<const Vertex> restrict_to) {
  if (restrict_to.empty())
    throw std::invalid_argument("coupled step needs a nonempty vertex set");
  DriftRecord rec{};
  rec.t = cs.steps;
  rec.wD_before = cs.wD;
  const Vertex v = restrict_to[cs.rng.pick_index(restrict_to.size())];
  rec.v = v;
  const auto ax = available_colors(g, cs.X, v);
  const auto ay = available_colors(g, cs.Y, v);
  const auto [cx, cy] = coupled_draw(ax, ay, cs.rng);
  cs.X.colors[v] = cx;
  cs.Y.colors[v] = cy;
  update_membership(cs, v, &rec.created, &rec.destroyed);
  ++cs.steps;
  rec.wD_after = cs.wD;
  return rec;
}

CouplingRun run_coupling(CoupledState& cs, const Graph& g,
                         const CouplingSchedule& schedule,
                         const CouplingOptions& opt) {
  CouplingRun run;
  auto note = [&](const DriftRecord& rec) {
    ++run.total_updates;
    if (opt.record_drift) run.drift.push_back(rec);
    if (opt.trajectory_stride > 0 && run.total_updates % opt.trajectory_stride == 0)
      run.trajectory.emplace_back(run.total_updates, cs.wD);
    if (!run.coalesced_at && cs.disagreement_count == 0)
      run.coalesced_at = run.total_updates;
  };
  if (opt.trajectory_stride > 0) run.trajectory.emplace_back(0, cs.wD);
  if (!run.coalesced_at && cs.disagreement_count == 0) run.coalesced_at = 0;

  if (schedule.kind == CouplingSchedule::Kind::kGlauber) {
    for (long t = 0; t < schedule.steps; ++t) {
      note(jerrum_coupled_step(cs, g));
      if (opt.stop_at_coalescence && run.coalesced_at) break;
    }
    return run;
  }
  if (schedule.partition == nullptr)
    throw std::invalid_argument("set dynamics schedule needs a partition");
  const auto& p = *schedule.partition;
  for (long i = 0; i < schedule.rounds; ++i) {
    const int j = static_cast<int>(i % p.m);
    if (p.levels[j].empty()) continue;
    const long budget = set_dynamics_round_budget(g, p.levels[j].size());
    for (long t = 0; t < budget; ++t) {
      note(jerrum_coupled_step(cs, g, p.levels[j]));
      if (opt.stop_at_coalescence && run.coalesced_at) return run;
    }
  }
  return run;
}

StationarySource make_exact_source(const std::vector<std::vector<int>>& states,
                                   int k) {
  if (states.empty()) throw std::invalid_argument("no states to sample from");
  return [&states, k](Rng& rng) {
    Coloring c;
    c.k = k;
    c.colors = states[rng.below(states.size())];
    return c;
  };
}

StationarySource make_chain_source(const Graph& g, const Coloring& start) {
  if (!is_proper(g, start))
    throw std::invalid_argument("chain source needs a proper start");
  const long per_sample = std::max<long>(
      1, static_cast<long>(g.n * std::log(std::max(g.n, 2))));
  const long burn_in = 50 * per_sample;
  // shared mutable chain per source; reseeded from the caller's rng draw
  auto state = std::make_shared<ChainState>(start, /*seed=*/0);
  auto burned = std::make_shared<bool>(false);
  return [=, &g](Rng& rng) {
    state->rng = Rng(rng.next());
    const long todo = *burned ? per_sample : burn_in;
    *burned = true;
    for (long t = 0; t < todo; ++t) glauber_step(*state, g);
    return state->coloring;
  };
}

double one_step_drift(const Graph& g, std::span<const double> weights,
                      const Coloring& X, const Coloring& Y) {
  double drift = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    const auto ax = available_colors(g, X, v);
    const auto ay = available_colors(g, Y, v);
    std::vector<int> common;
    std::set_intersection(ax.begin(), ax.end(), ay.begin(), ay.end(),
                          std::back_inserter(common));
    const double p_match =
        static_cast<double>(common.size()) / std::max(ax.size(), ay.size());
    const double p_now = (X.colors[v] != Y.colors[v]) ? 1.0 : 0.0;
    drift += weights[v] * ((1.0 - p_match) - p_now);
  }
  return drift / g.n;
}

ContractionStats contraction_estimate(const Graph& g,
                                      std::span<const double> weights, int k,
                                      int samples, const StationarySource& source,
                                      Rng& rng, std::optional<Vertex> disagree_at) {
  if (samples < 10) throw std::invalid_argument("need at least 10 samples");
  double sum_d = 0, sum_d2 = 0, sum_b = 0, sum_b2 = 0;
  for (int s = 0; s < samples; ++s) {
    Coloring Y = source(rng);
    if (Y.k != k) throw std::invalid_argument("source palette mismatch");
    // plant a single disagreement
    Coloring X = Y;
    Vertex flip = -1;
    constexpr int kMaxRetries = 10000;
    for (int attempt = 0;; ++attempt) {
      std::vector<std::pair<Vertex, int>> options;
      if (disagree_at) {
        for (int c : available_colors(g, Y, *disagree_at))
          if (c != Y.colors[*disagree_at]) options.emplace_back(*disagree_at, c);
      } else {
        for (Vertex v = 0; v < g.n; ++v)
          for (int c : available_colors(g, Y, v))
            if (c != Y.colors[v]) options.emplace_back(v, c);
      }
      if (!options.empty()) {
        const auto [v, c] = options[rng.below(options.size())];
        X.colors[v] = c;
        flip = v;
        break;
      }
      // no single-site disagreement exists anywhere: frozen state, zero drift
      bool any = false;
      for (Vertex v = 0; v < g.n && !any; ++v)
        any = available_colors(g, Y, v).size() > 1;
      if (!any) break;
      if (attempt >= kMaxRetries)
        throw std::runtime_error("could not plant a disagreement at the "
                                 "requested vertex");
      Y = source(rng);
      X = Y;
    }
    double d = 0, b = 0;
    if (flip >= 0) {
      d = one_step_drift(g, weights, X, Y);
      // analytic bound from Eq-style counting; availability taken as the
      // min over the two chains
      for (Vertex u : g.adj[flip]) {
        const auto ax = available_colors(g, X, u).size();
        const auto ay = available_colors(g, Y, u).size();
        b += weights[u] / std::min(ax, ay);
      }
      b = (b - weights[flip]) / g.n;
    }
    sum_d += d;
    sum_d2 += d * d;
    sum_b += b;
    sum_b2 += b * b;
  }
  ContractionStats st;
  st.samples = samples;
  st.mean_drift = sum_d / samples;
  st.mean_bound = sum_b / samples;
  const double var_d =
      std::max(0.0, sum_d2 / samples - st.mean_drift * st.mean_drift);
  const double var_b =
      std::max(0.0, sum_b2 / samples - st.mean_bound * st.mean_bound);
  st.se_drift = std::sqrt(var_d / samples);
  st.se_bound = std::sqrt(var_b / samples);
  return st;
}

std::map<Vertex, std::vector<Vertex>> track_disagreement_origins(
    const Graph& g, std::span<const Vertex> initial,
    std::span<const DriftRecord> records) {
  std::map<Vertex, Vertex> origin;  // current disagreement -> origin
  for (Vertex z : initial) origin[z] = z;
  for (const auto& rec : records) {
    if (rec.destroyed) {
      origin.erase(rec.v);
      continue;
    }
    if (!rec.created) continue;
    Vertex best = -1;
    for (Vertex u : g.adj[rec.v]) {
      auto it = origin.find(u);
      if (it != origin.end()) best = (best == -1) ? it->second : std::min(best, it->second);
    }
    if (best == -1)
      throw std::logic_error("disagreement born without a disagreeing neighbor");
    origin[rec.v] = best;
  }
  std::map<Vertex, std::vector<Vertex>> grouped;
  for (auto [v, z] : origin) grouped[z].push_back(v);
  return grouped;
}

std::string trajectory_to_csv(std::uint64_t seed, const CouplingRun& run) {
  std::ostringstream out;
  out << "seed,t,wD,coalesced\n";
  for (auto [t, w] : run.trajectory) {
    const bool coal = run.coalesced_at && t >= *run.coalesced_at;
    out << seed << ',' << t << ',' << w << ',' << (coal ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string drift_to_csv(std::uint64_t seed, std::span<const DriftRecord> records) {
  std::ostringstream out;
  out << "seed,t,vertex,delta_wD\n";
  for (const auto& r : records)
    out << seed << ',' << r.t << ',' << r.v << ',' << (r.wD_after - r.wD_before)
        << '\n';
  return out.str();
}

}  // namespace chromix
