#include "hitaug/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hitaug/errors.hpp"
#include "hitaug/rng.hpp"

namespace hitaug {

namespace {

constexpr std::uint64_t kTrialsPerBlock = 4096;
constexpr std::uint64_t kSubsampleStream = 0x5ab5a3b1eULL;

// Flat copy of G + F for the walk kernel.
struct WalkGraph {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;
  std::vector<char> blue;

  explicit WalkGraph(const AugmentedGraph& g) {
    const std::size_t n = g.node_count();
    offsets.resize(n + 1, 0);
    blue.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      offsets[v + 1] = offsets[v] + g.degree(static_cast<NodeId>(v));
      blue[v] = g.is_blue(static_cast<NodeId>(v)) ? 1 : 0;
    }
    targets.resize(offsets.back());
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t d = offsets[v + 1] - offsets[v];
      for (std::size_t i = 0; i < d; ++i) targets[offsets[v] + i] = g.neighbor(static_cast<NodeId>(v), i);
    }
  }

  std::size_t walk(NodeId start, std::size_t max_steps, std::mt19937_64& rng) const {
    NodeId v = start;
    for (std::size_t s = 1; s <= max_steps; ++s) {
      const std::size_t lo = offsets[v];
      v = targets[lo + uniform_below(rng, offsets[v + 1] - lo)];
      if (blue[v]) return s;
    }
    return max_steps;
  }
};

void check_open_unit(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) {
    throw InvalidParameter(std::string(what) + " must lie in (0, 1), got " + std::to_string(x));
  }
}

}  // namespace

EstimatorConfig EstimatorConfig::experiment(std::uint64_t seed) {
  EstimatorConfig c;
  c.mode = EstimatorMode::Experiment;
  c.epsilon = 0.1;
  c.lambda = 0.1;
  c.subsample_fraction = 0.1;
  c.seed = seed;
  return c;
}

std::size_t truncation_length(double mean_red_degree, double epsilon, double lambda) {
  check_open_unit(epsilon, "epsilon");
  if (!(lambda >= 0.0)) throw InvalidParameter("lambda must be non-negative");
  if (lambda >= 1.0) throw InvalidParameter("lambda must be < 1; the walk-length formula diverges");
  if (!(mean_red_degree >= 1.0)) throw InvalidParameter("mean red degree must be >= 1");
  if (lambda == 0.0) return 1;
  const double x = std::log(mean_red_degree / (epsilon * (1.0 - lambda))) / std::log(1.0 / lambda) - 1.0;
  const double ell = std::ceil(x);
  if (ell >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
    throw InvalidParameter("walk length overflows; lambda is too close to 1");
  }
  return ell < 1.0 ? 1 : static_cast<std::size_t>(ell);
}

std::uint64_t sample_count(std::size_t walk_length, double epsilon, double delta, std::size_t n) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  if (!(delta > 0.0)) throw InvalidParameter("delta must be positive");
  if (n == 0) throw InvalidParameter("node count must be positive");
  const double l = static_cast<double>(walk_length);
  const double t = std::ceil(l * l / (epsilon * epsilon) * std::log(2.0 * static_cast<double>(n) / delta));
  if (t >= 9.0e18) throw InvalidParameter("sample count overflows");
  return t < 1.0 ? 1 : static_cast<std::uint64_t>(t);
}

std::size_t bounded_walk(const AugmentedGraph& graph, NodeId start, std::size_t max_steps,
                         std::mt19937_64& rng) {
  NodeId v = start;
  for (std::size_t s = 1; s <= max_steps; ++s) {
    v = graph.neighbor(v, uniform_below(rng, graph.degree(v)));
    if (graph.is_blue(v)) return s;
  }
  return max_steps;
}

double spectral_radius(const AugmentedGraph& graph) {
  const auto& base = graph.base();
  const auto reds = base.red_nodes();
  const std::size_t r = reds.size();

  // Red-red adjacency in local indices plus D_R^{-1/2}.
  std::vector<std::size_t> off(r + 1, 0);
  std::vector<std::int32_t> adj;
  std::vector<double> inv_sqrt_deg(r);
  for (std::size_t i = 0; i < r; ++i) {
    inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(graph.degree(reds[i])));
    for (NodeId w : base.neighbors(reds[i])) {
      const auto j = base.red_position(w);
      if (j >= 0) adj.push_back(j);
    }
    off[i + 1] = adj.size();
  }
  if (adj.empty()) return 0.0;

  auto apply_m = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < r; ++i) {
      double acc = 0.0;
      for (std::size_t k = off[i]; k < off[i + 1]; ++k) acc += inv_sqrt_deg[adj[k]] * x[adj[k]];
      y[i] = inv_sqrt_deg[i] * acc;
    }
  };

  // Power iteration on M^2. The Rayleigh quotient bounds lambda^2 from below;
  // since M^2 is non-negative and x stays positive on every node with a red
  // neighbor, max_i (M^2 x)_i / x_i bounds it from above (Collatz-Wielandt).
  // The upper bound is what gets returned.
  std::vector<double> x(r), mx(r), y(r);
  for (std::size_t i = 0; i < r; ++i) x[i] = off[i + 1] > off[i] ? 1.0 / inv_sqrt_deg[i] : 0.0;
  double upper = std::numeric_limits<double>::infinity();
  constexpr int kMaxIterations = 200000;
  constexpr double kRelTol = 1e-6;
  for (int it = 0; it < kMaxIterations; ++it) {
    apply_m(x, mx);
    apply_m(mx, y);
    double xy = 0.0, xx = 0.0, cw = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      xy += x[i] * y[i];
      xx += x[i] * x[i];
      if (x[i] > 0.0) cw = std::max(cw, y[i] / x[i]);
      norm = std::max(norm, std::abs(y[i]));
    }
    const double lower = xy / xx;
    upper = std::min(upper, cw);
    if (norm == 0.0) return 0.0;
    if (upper - lower <= kRelTol * upper) break;
    for (std::size_t i = 0; i < r; ++i) x[i] = y[i] / norm;
  }
  return std::min(std::sqrt(upper), 1.0 - 1e-9);
}

double spectral_radius(const BipartiteInstance& instance) {
  return spectral_radius(AugmentedGraph(instance));
}

ResolvedEstimator resolve_estimator(const AugmentedGraph& graph, const EstimatorConfig& config) {
  check_open_unit(config.epsilon, "epsilon");
  check_open_unit(config.delta, "delta");
  if (!(config.subsample_fraction > 0.0 && config.subsample_fraction <= 1.0)) {
    throw InvalidParameter("subsample fraction must lie in (0, 1]");
  }

  const bool guarantee = config.mode == EstimatorMode::Guarantee;
  if (guarantee) {
    if (config.subsample_fraction != 1.0) {
      throw InvalidParameter("guarantee mode samples every red node; subsample fraction must be 1");
    }
    if (config.walk_length || config.samples_per_node) {
      throw InvalidParameter("guarantee mode derives walk length and sample count from the formulas");
    }
  }

  ResolvedEstimator p;
  p.epsilon = guarantee ? config.epsilon / 2.0 : config.epsilon;
  p.mean_red_degree = mean_red_degree(graph);
  if (config.lambda) {
    p.lambda = *config.lambda;
    if (!(p.lambda >= 0.0 && p.lambda < 1.0)) throw InvalidParameter("lambda must lie in [0, 1)");
    if (guarantee && !config.trust_lambda) {
      const double computed = spectral_radius(graph);
      if (p.lambda < computed * (1.0 - 1e-9)) {
        throw InvalidParameter("lambda override " + std::to_string(p.lambda) +
                               " is below the spectral radius " + std::to_string(computed));
      }
    }
  } else {
    p.lambda = spectral_radius(graph);
  }

  p.walk_length = config.walk_length.value_or(truncation_length(p.mean_red_degree, p.epsilon, p.lambda));
  p.samples_per_node = config.samples_per_node.value_or(
      sample_count(p.walk_length, p.epsilon, config.delta, graph.node_count()));
  if (p.walk_length == 0 || p.samples_per_node == 0) {
    throw InvalidParameter("walk length and sample count must be positive");
  }

  const std::size_t reds = graph.base().red_count();
  p.start_nodes = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(config.subsample_fraction * static_cast<double>(reds) - 1e-9)),
      1, reds);
  return p;
}

Estimate estimate_g(const AugmentedGraph& graph, const EstimatorConfig& config) {
  Estimate est;
  est.params = resolve_estimator(graph, config);

  const auto reds = graph.base().red_nodes();
  if (est.params.start_nodes == reds.size()) {
    est.starts.assign(reds.begin(), reds.end());
  } else {
    std::mt19937_64 pick(derive_seed(config.seed, {kSubsampleStream}));
    std::sample(reds.begin(), reds.end(), std::back_inserter(est.starts), est.params.start_nodes, pick);
  }

  const WalkGraph walker(graph);
  const std::uint64_t t = est.params.samples_per_node;
  const std::size_t ell = est.params.walk_length;
  est.node_means.resize(est.starts.size());
  for (std::size_t s = 0; s < est.starts.size(); ++s) {
    const NodeId start = est.starts[s];
    std::uint64_t total = 0;
    for (std::uint64_t block = 0; block * kTrialsPerBlock < t; ++block) {
      std::mt19937_64 rng(derive_seed(config.seed, {static_cast<std::uint64_t>(start), block}));
      const std::uint64_t end = std::min(t, (block + 1) * kTrialsPerBlock);
      for (std::uint64_t trial = block * kTrialsPerBlock; trial < end; ++trial) {
        total += walker.walk(start, ell, rng);
      }
    }
    est.node_means[s] = static_cast<double>(total) / static_cast<double>(t);
  }
  est.g_hat = std::accumulate(est.node_means.begin(), est.node_means.end(), 0.0) /
              static_cast<double>(est.node_means.size());
  return est;
}

Estimate estimate_g(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                    const EstimatorConfig& config) {
  return estimate_g(AugmentedGraph(instance, shortcuts), config);
}

}  // namespace hitaug
