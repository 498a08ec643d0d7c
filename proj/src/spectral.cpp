#include "chromix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chromix/rng.hpp"
#include "json.hpp"

namespace chromix {

namespace {

// y = M x for M = A + shift*I + perturb*J, reusing one scratch pass.
void apply(const Graph& g, const std::vector<double>& x, double shift,
           double perturb, std::vector<double>& y) {
  double sum = 0.0;
  for (double xi : x) sum += xi;
  for (Vertex v = 0; v < g.n; ++v) {
    double acc = perturb * sum + shift * x[v];
    for (Vertex u : g.adj[v]) acc += x[u];
    y[v] = acc;
  }
}

double rayleigh(const Graph& g, const std::vector<double>& x, double shift,
                double perturb) {
  std::vector<double> y(x.size());
  apply(g, x, shift, perturb, y);
  double num = 0.0, den = 0.0;
  for (Vertex v = 0; v < g.n; ++v) {
    num += x[v] * y[v];
    den += x[v] * x[v];
  }
  return num / den;
}

void normalize_l1(std::vector<double>& x) {
  double s = 0.0;
  for (double xi : x) s += std::abs(xi);
  for (double& xi : x) xi /= s;
}

// Power iteration on A + shift*I + perturb*J from a strictly positive start.
// Returns the converged vector; lambda/residual/iters through out-params.
std::vector<double> iterate(const Graph& g, double shift, double perturb,
                            const PowerOptions& opt, Rng& rng, double& lambda,
                            double& residual, int& iters) {
  std::vector<double> x(g.n), y(g.n);
  for (double& xi : x) xi = 0.5 + rng.unit();  // positive start, Perron cone
  normalize_l1(x);
  lambda = 0.0;
  residual = 0.0;
  for (iters = 1; iters <= opt.max_iters; ++iters) {
    apply(g, x, shift, perturb, y);
    double num = 0.0, den = 0.0, ymax = 0.0;
    for (Vertex v = 0; v < g.n; ++v) {
      num += x[v] * y[v];
      den += x[v] * x[v];
      ymax = std::max(ymax, std::abs(y[v]));
    }
    lambda = num / den;
    double rmax = 0.0, xmax = 0.0;
    for (Vertex v = 0; v < g.n; ++v) {
      rmax = std::max(rmax, std::abs(y[v] - lambda * x[v]));
      xmax = std::max(xmax, std::abs(x[v]));
    }
    residual = rmax / xmax;
    if (ymax == 0.0) {  // zero operator (edgeless, no perturbation)
      lambda = 0.0;
      residual = 0.0;
      return x;
    }
    x.swap(y);
    normalize_l1(x);
    if (residual <= opt.tolerance) return x;
  }
  throw std::runtime_error("power iteration did not converge: residual " +
                           std::to_string(residual) + " after " +
                           std::to_string(opt.max_iters) + " iterations");
}

}  // namespace

double EigenData::w_min() const {
  double m = w.empty() ? 0.0 : w[0];
  for (double wi : w) m = std::min(m, wi);
  return m;
}

EigenData power_iterate(const Graph& g, const PowerOptions& opt) {
  if (g.n < 1) throw std::invalid_argument("graph must have a vertex");
  if (opt.tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
  EigenData e;
  e.tolerance = opt.tolerance;
  Rng rng(Rng::mix(opt.seed));
  if (g.edges.empty()) {
    // Degenerate case: A = 0, any perturbation rescales the uniform vector.
    e.w.assign(g.n, 1.0 / g.n);
    return e;
  }
  // Phase 1: rho estimate on A. The +I shift separates +rho from -rho on
  // bipartite graphs without changing eigenvectors.
  double lambda1, res1;
  int it1;
  iterate(g, /*shift=*/1.0, /*perturb=*/0.0, opt, rng, lambda1, res1, it1);
  const double rho_est = lambda1 - 1.0;
  // Phase 2: principal eigenvector of A~ = A + (rho_est/n) J.
  e.perturbation = rho_est / g.n;
  double lambda2, res2;
  int it2;
  e.w = iterate(g, /*shift=*/0.0, e.perturbation, opt, rng, lambda2, res2, it2);
  e.rho_tilde = lambda2;
  e.rho_hat = rayleigh(g, e.w, 0.0, 0.0);
  e.iterations = it1 + it2;
  e.residual = res2;
  return e;
}

double choose_epsilon(const Graph& g, const EigenData& eigen, double tolerance) {
  if (g.max_degree < 2) throw std::invalid_argument("choose_epsilon needs max degree >= 2");
  const double rho_prime = eigen.rho_hat * (1.0 + tolerance);
  if (rho_prime >= g.max_degree)
    throw std::runtime_error("no spectral gap: graph outside rho <= Delta^(1-eps) regime");
  const double eps = std::log(g.max_degree / rho_prime) / std::log(g.max_degree);
  return std::min(eps, 1.0 - 1e-12);
}

LevelPartition build_levels(const Graph& g, const EigenData& eigen, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  if (static_cast<int>(eigen.w.size()) != g.n)
    throw std::invalid_argument("eigen data does not match graph");
  LevelPartition p;
  p.epsilon = epsilon;
  p.weights = eigen.w;
  p.level_of.assign(g.n, 0);
  const double wmin = eigen.w_min();
  if (wmin <= 0) throw std::invalid_argument("eigenvector must be positive");
  const double delta = std::max(g.max_degree, 2);
  const double step = (epsilon / 2.0) * std::log(delta);
  int max_level = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    // closed on the left, open on the right
    const int lvl = static_cast<int>(std::floor(std::log(eigen.w[v] / wmin) / step));
    p.level_of[v] = std::max(lvl, 0);
    max_level = std::max(max_level, p.level_of[v]);
  }
  p.m = max_level + 1;
  p.levels.assign(p.m, {});
  for (Vertex v = 0; v < g.n; ++v) p.levels[p.level_of[v]].push_back(v);

  // up-neighbor bound, Delta^(1-eps/2)
  const double up_bound = std::pow(delta, 1.0 - epsilon / 2.0);
  for (Vertex v = 0; v < g.n; ++v) {
    int up = 0;
    for (Vertex u : g.adj[v])
      if (p.level_of[u] >= p.level_of[v]) ++up;
    if (!(up < up_bound))
      throw std::runtime_error(
          "level construction failed: vertex " + std::to_string(v) + " has " +
          std::to_string(up) + " neighbors at its level or above (bound " +
          std::to_string(up_bound) + "); epsilon too aggressive for this graph");
  }
  return p;
}

PartitionReport verify_partition(const LevelPartition& p, const Graph& g,
                                 const EigenData& eigen) {
  PartitionReport r;
  const double delta = std::max(g.max_degree, 2);
  const double up_bound = std::pow(delta, 1.0 - p.epsilon / 2.0);
  for (Vertex v = 0; v < g.n; ++v) {
    int up = 0;
    for (Vertex u : g.adj[v])
      if (p.level_of[u] >= p.level_of[v]) ++up;
    if (!(up < up_bound)) r.expansion_witnesses.push_back(v);
  }
  r.level_count_bound =
      (2.0 / p.epsilon) * std::log(2.0 * g.n) / std::log(delta);
  r.level_count_ok = p.m <= r.level_count_bound + 1e-9;
  // w(N(u)) <= rho_tilde w(u), with slack for the converged residual
  const double wmax = *std::max_element(eigen.w.begin(), eigen.w.end());
  const double slack = 10.0 * eigen.tolerance * wmax + 1e-15;
  for (Vertex v = 0; v < g.n; ++v) {
    double wn = 0.0;
    for (Vertex u : g.adj[v]) wn += eigen.w[u];
    if (wn > eigen.rho_tilde * eigen.w[v] + slack) r.weight_witnesses.push_back(v);
  }
  r.pass = r.expansion_witnesses.empty() && r.level_count_ok &&
           r.weight_witnesses.empty();
  return r;
}

std::string PartitionReport::summary() const {
  std::ostringstream out;
  out << (pass ? "pass" : "FAIL") << ": expansion witnesses "
      << expansion_witnesses.size() << ", level count "
      << (level_count_ok ? "ok" : "exceeded") << " (bound " << level_count_bound
      << "), weight witnesses " << weight_witnesses.size();
  return out.str();
}

std::string partition_to_json(const LevelPartition& p) {
  nlohmann::json j;
  j["epsilon"] = p.epsilon;
  j["m"] = p.m;
  j["levels"] = p.levels;
  j["weights"] = p.weights;
  return j.dump(2);
}

}  // namespace chromix
