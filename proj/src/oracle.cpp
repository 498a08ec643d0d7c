#include "chromix/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "json.hpp"

namespace chromix {

namespace {

void backtrack(const Graph& g, int k, long budget, std::vector<int>& colors,
               Vertex v, std::vector<std::vector<int>>& out) {
  if (v == g.n) {
    if (static_cast<long>(out.size()) >= budget)
      throw std::runtime_error("enumeration budget exceeded after " +
                               std::to_string(out.size()) + " states");
    out.push_back(colors);
    return;
  }
  for (int c = 1; c <= k; ++c) {
    bool ok = true;
    for (Vertex u : g.adj[v]) {
      if (u < v && colors[u] == c) {
        ok = false;
        break;
      }
    }
    if (ok) {
      colors[v] = c;
      backtrack(g, k, budget, colors, v + 1, out);
    }
  }
  colors[v] = 0;
}

// Neighbor states in the Glauber move graph: one vertex recolored to a
// different available color.
template <typename Fn>
void for_each_move(const ExactModel& model, const Graph& g,
                   const std::vector<int>& state, Fn&& fn) {
  std::vector<int> tmp = state;
  for (Vertex v = 0; v < g.n; ++v) {
    for (int c = 1; c <= model.k; ++c) {
      if (c == state[v]) continue;
      bool ok = true;
      for (Vertex u : g.adj[v])
        if (state[u] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      tmp[v] = c;
      fn(v, tmp);
    }
    tmp[v] = state[v];
  }
}

}  // namespace

long ExactModel::state_index(std::span<const int> colors) const {
  std::vector<int> key(colors.begin(), colors.end());
  auto it = std::lower_bound(states.begin(), states.end(), key);
  if (it == states.end() || *it != key) return -1;
  return it - states.begin();
}

ExactModel enumerate_colorings(const Graph& g, int k, long budget) {
  if (k < 1) throw std::invalid_argument("palette must be nonempty");
  ExactModel model;
  model.n = g.n;
  model.k = k;
  std::vector<int> colors(g.n, 0);
  backtrack(g, k, budget, colors, 0, model.states);
  return model;
}

void build_transition_matrix(ExactModel& model, const Graph& g) {
  const auto S = model.states.size();
  if (S > 5000)
    throw std::runtime_error("transition matrix over " + std::to_string(S) +
                             " states would be too large; oracle scale only");
  model.P.assign(S, std::vector<double>(S, 0.0));
  model.component.assign(S, -1);
  const double inv_n = 1.0 / g.n;
  Coloring c;
  c.k = model.k;
  for (std::size_t s = 0; s < S; ++s) {
    c.colors = model.states[s];
    double stay = 0.0;
    for (Vertex v = 0; v < g.n; ++v) {
      const auto avail = available_colors(g, c, v);
      const double p = inv_n / avail.size();
      stay += p;  // redrawing the current color
      for (int col : avail) {
        if (col == c.colors[v]) continue;
        c.colors[v] = col;
        const long t = model.state_index(c.colors);
        c.colors[v] = model.states[s][v];
        model.P[s][t] += p;
      }
    }
    model.P[s][s] += stay;
  }
  // component labels over the move graph
  model.component_count = 0;
  for (std::size_t s = 0; s < S; ++s) {
    if (model.component[s] != -1) continue;
    std::deque<std::size_t> q{s};
    model.component[s] = model.component_count;
    while (!q.empty()) {
      const auto cur = q.front();
      q.pop_front();
      for (std::size_t t = 0; t < S; ++t) {
        if (t != cur && model.P[cur][t] > 0 && model.component[t] == -1) {
          model.component[t] = model.component_count;
          q.push_back(t);
        }
      }
    }
    ++model.component_count;
  }
}

double exact_tv(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("distributions have different support sizes");
  double sp = 0, sq = 0;
  for (double x : p) {
    if (x < 0) throw std::invalid_argument("negative probability");
    sp += x;
  }
  for (double x : q) {
    if (x < 0) throw std::invalid_argument("negative probability");
    sq += x;
  }
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
    throw std::invalid_argument("distributions must sum to 1");
  double tv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return tv / 2;
}

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t S = a.size();
  Matrix out(S, std::vector<double>(S, 0.0));
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t l = 0; l < S; ++l) {
      const double ail = a[i][l];
      if (ail == 0.0) continue;
      const auto& bl = b[l];
      auto& oi = out[i];
      for (std::size_t j = 0; j < S; ++j) oi[j] += ail * bl[j];
    }
  return out;
}

double worst_tv_to_uniform(const Matrix& pt) {
  const double u = 1.0 / pt.size();
  double worst = 0;
  for (const auto& row : pt) {
    double tv = 0;
    for (double x : row) tv += std::abs(x - u);
    worst = std::max(worst, tv / 2);
  }
  return worst;
}

}  // namespace

MixingResult exact_mixing_time(const ExactModel& model, double threshold) {
  if (model.P.empty())
    throw std::invalid_argument("transition matrix not built");
  MixingResult res;
  if (!model.connected()) {
    res.status = MixingResult::Status::kDisconnected;
    return res;
  }
  constexpr int kMaxLog = 20;
  std::vector<Matrix> powers;  // powers[j] = P^(2^j)
  powers.push_back(model.P);
  if (worst_tv_to_uniform(powers[0]) <= threshold) {
    res.t = 1;
    return res;
  }
  int j = 0;
  while (true) {
    if (j + 1 > kMaxLog) {
      res.status = MixingResult::Status::kLowerBound;
      res.t = 1L << kMaxLog;
      return res;
    }
    powers.push_back(multiply(powers[j], powers[j]));
    ++j;
    if (worst_tv_to_uniform(powers[j]) <= threshold) break;
  }
  // smallest t in (2^(j-1), 2^j]; TV to stationarity is monotone in t
  long lo = 1L << (j - 1), hi = 1L << j;
  Matrix base = powers[j - 1];  // P^lo, known above threshold
  while (hi - lo > 1) {
    // extend base by the largest useful power of two
    long extra = (hi - lo) / 2;
    int b = 0;
    while ((2L << b) <= extra) ++b;
    Matrix cand = multiply(base, powers[b]);
    const long mid = lo + (1L << b);
    if (worst_tv_to_uniform(cand) <= threshold) {
      hi = mid;
    } else {
      lo = mid;
      base = std::move(cand);
    }
  }
  res.t = hi;
  return res;
}

std::optional<long> exact_diameter(const ExactModel& model, const Graph& g) {
  const auto S = model.states.size();
  if (S == 0) return std::nullopt;
  // adjacency of the move graph, built once
  std::vector<std::vector<int>> nbr(S);
  for (std::size_t s = 0; s < S; ++s) {
    for_each_move(model, g, model.states[s], [&](Vertex, const std::vector<int>& t) {
      nbr[s].push_back(static_cast<int>(model.state_index(t)));
    });
  }
  long diameter = 0;
  std::vector<long> dist(S);
  for (std::size_t s = 0; s < S; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<std::size_t> q{s};
    dist[s] = 0;
    std::size_t seen = 1;
    while (!q.empty()) {
      const auto cur = q.front();
      q.pop_front();
      for (int t : nbr[cur])
        if (dist[t] == -1) {
          dist[t] = dist[cur] + 1;
          diameter = std::max(diameter, dist[t]);
          q.push_back(static_cast<std::size_t>(t));
          ++seen;
        }
    }
    if (seen != S) return std::nullopt;  // disconnected
  }
  return diameter;
}

std::string oracle_report_json(const ExactModel& model, const Graph& g) {
  nlohmann::json j;
  j["omega_size"] = model.states.size();
  const auto diam = exact_diameter(model, g);
  if (diam)
    j["diameter"] = *diam;
  else
    j["diameter"] = "disconnected";
  if (model.P.empty()) {
    j["connected"] = diam.has_value();
    j["mixing_time"] = "skipped";
    j["stationary_ok"] = "skipped";
    return j.dump(2);
  }
  j["connected"] = model.connected();
  const auto mix = exact_mixing_time(model);
  switch (mix.status) {
    case MixingResult::Status::kMixed:
      j["mixing_time"] = mix.t;
      break;
    case MixingResult::Status::kDisconnected:
      j["mixing_time"] = "disconnected";
      break;
    case MixingResult::Status::kLowerBound:
      j["mixing_time"] = ">" + std::to_string(mix.t);
      break;
  }
  // uniform row vector times P should stay uniform
  double worst = 0;
  const auto S = model.states.size();
  for (std::size_t col = 0; col < S; ++col) {
    double mass = 0;
    for (std::size_t row = 0; row < S; ++row) mass += model.P[row][col] / S;
    worst = std::max(worst, std::abs(mass - 1.0 / S));
  }
  j["stationary_ok"] = worst <= 1e-12;
  return j.dump(2);
}

}  // namespace chromix
