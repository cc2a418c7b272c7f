#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hitaug/estimator.hpp"
#include "hitaug/graph.hpp"
#include "hitaug/hitting.hpp"

namespace hitaug {

enum class GreedyMode { Exact, Estimated };

struct TraceStep {
  NodeId endpoint = -1;
  double objective = 0.0;        // g (exact mode) or g-hat (estimated mode) after insertion
  std::size_t evaluations = 0;   // objective evaluations spent on this step
};

struct GreedyTrace {
  GreedyMode mode = GreedyMode::Exact;
  std::size_t iteration_budget = 0;
  double initial_objective = 0.0;
  std::vector<TraceStep> steps;

  std::size_t total_evaluations() const;
};

struct GreedyResult {
  ShortcutSet shortcuts;
  GreedyTrace trace;
};

struct GreedyOptions {
  double epsilon = 0.1;
  // Run exactly k iterations instead of the bicriteria budget.
  bool cap_at_k = true;
  // Lazy (stale-bound) candidate evaluation. Exact in exact mode; a heuristic
  // in estimated mode.
  bool lazy = false;
  SolverOptions solver{};
};

// ceil(factor * k * ln(n^3 / epsilon)); factor is 1 for greedy, 2 for greedy+.
std::size_t greedy_iteration_budget(std::size_t n, std::size_t k, double epsilon, double factor);

// Greedy on the exact average hitting time. Ties go to the lowest node index;
// stops early once no candidate remains or the best marginal decrease is
// below 1e-12.
GreedyResult greedy_exact(const BipartiteInstance& instance, std::size_t k,
                          const GreedyOptions& options = {});

// Greedy on walk estimates. In guarantee mode epsilon must be <= 1/(4k) and
// the estimator runs with the same epsilon. Each (iteration, candidate)
// evaluation uses its own seed derived from estimator.seed.
GreedyResult greedy_plus(const BipartiteInstance& instance, std::size_t k,
                         const GreedyOptions& options, const EstimatorConfig& estimator);

struct BruteForceResult {
  ShortcutSet shortcuts;
  double value = 0.0;
  std::size_t evaluated = 0;
};

// Number of shortcut multisets of size min(k, total capacity).
double count_shortcut_multisets(const BipartiteInstance& instance, std::size_t k);

// Exhaustive optimum over multisets of red endpoints of size min(k, total
// capacity). The first minimizer in lexicographic order wins. Throws
// InstanceTooLarge above `limit` multisets.
BruteForceResult brute_force_opt(const BipartiteInstance& instance, std::size_t k,
                                 Objective objective, double limit = 1e6,
                                 const SolverOptions& solver = {});

// k endpoints drawn uniformly (with replacement) from the nodes that still
// have capacity. Stops early if every red node saturates.
ShortcutSet pure_random(const BipartiteInstance& instance, std::size_t k, std::uint64_t seed);

// One shortcut at each of the k candidates with the largest exact hitting
// time on the original graph.
ShortcutSet top_hitting_baseline(const BipartiteInstance& instance, std::size_t k,
                                 const SolverOptions& solver = {});

}  // namespace hitaug
