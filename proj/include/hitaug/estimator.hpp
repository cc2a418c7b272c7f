#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hitaug/graph.hpp"

namespace hitaug {

// Guarantee: every red node is sampled, epsilon/2 feeds both the walk length
// and the sample count, and the estimate lands in (1 +- epsilon) g with
// probability at least 1 - delta.
// Experiment: the cheaper protocol used for sweeps; a fraction of the red
// nodes is sampled and epsilon is used as given. No accuracy guarantee.
enum class EstimatorMode { Guarantee, Experiment };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::Guarantee;
  double epsilon = 0.1;
  double delta = 0.1;
  // Spectral-radius bound; computed from the graph when absent.
  std::optional<double> lambda;
  // Skip the "lambda must be >= computed radius" check. Only for callers
  // that pass a radius already known to dominate (e.g. the base graph's).
  bool trust_lambda = false;
  // Manual overrides, accepted in experiment mode only.
  std::optional<std::size_t> walk_length;
  std::optional<std::uint64_t> samples_per_node;
  double subsample_fraction = 1.0;
  std::uint64_t seed = 0;

  // Defaults of the sweep protocol: epsilon = lambda = 0.1, 10% of red nodes.
  static EstimatorConfig experiment(std::uint64_t seed);
};

// Parameters after applying the formulas to a concrete graph.
struct ResolvedEstimator {
  double epsilon = 0.0;  // the value fed to the formulas (epsilon/2 in guarantee mode)
  double lambda = 0.0;
  double mean_red_degree = 0.0;
  std::size_t walk_length = 0;
  std::uint64_t samples_per_node = 0;
  std::size_t start_nodes = 0;
};

struct Estimate {
  double g_hat = 0.0;
  ResolvedEstimator params;
  std::vector<NodeId> starts;
  std::vector<double> node_means;
};

// max(1, ceil(log(d_R / (eps (1 - lambda))) / log(1 / lambda) - 1)).
std::size_t truncation_length(double mean_red_degree, double epsilon, double lambda);

// ceil(ell^2 / eps^2 * ln(2n / delta)).
std::uint64_t sample_count(std::size_t walk_length, double epsilon, double delta, std::size_t n);

// Steps taken by one simple random walk from `start` that stops on the first
// blue node or after `max_steps` edge traversals.
std::size_t bounded_walk(const AugmentedGraph& graph, NodeId start, std::size_t max_steps,
                         std::mt19937_64& rng);

// Spectral radius of D_R^{-1/2} A_R D_R^{-1/2} (degrees taken in the full
// graph) by power iteration on its square. Zero when G[R] has no edges.
double spectral_radius(const AugmentedGraph& graph);
double spectral_radius(const BipartiteInstance& instance);

ResolvedEstimator resolve_estimator(const AugmentedGraph& graph, const EstimatorConfig& config);

// Deterministic for a fixed config: walks for start node r and trial block b
// draw from the stream derive_seed(seed, {r, b}).
Estimate estimate_g(const AugmentedGraph& graph, const EstimatorConfig& config);
Estimate estimate_g(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                    const EstimatorConfig& config);

}  // namespace hitaug
