#include "hitaug/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "hitaug/errors.hpp"
#include "hitaug/rng.hpp"

namespace hitaug {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kMinImprovement = 1e-12;

// Objective of F + {candidate}, evaluated at the given greedy iteration.
using Evaluator = std::function<double(const ShortcutSet&, std::size_t iteration, NodeId candidate)>;

struct HeapEntry {
  double gain;
  NodeId node;
  std::size_t stamp;  // iteration the gain was computed in; npos before first evaluation
};

struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  }
};

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

// Shared greedy loop. Each iteration picks, among candidates whose objective
// is within tolerance of the minimum, the one with the lowest index.
GreedyResult run_greedy(const BipartiteInstance& instance, std::size_t budget, GreedyMode mode,
                        bool lazy, double initial, const Evaluator& eval) {
  GreedyResult result;
  result.trace.mode = mode;
  result.trace.iteration_budget = budget;
  result.trace.initial_objective = initial;
  const bool exact = mode == GreedyMode::Exact;

  ShortcutSet& F = result.shortcuts;
  double current = initial;

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
  if (lazy) {
    for (NodeId r : candidate_endpoints(instance, F)) {
      heap.push({std::numeric_limits<double>::infinity(), r, kNever});
    }
  }

  for (std::size_t it = 0; it < budget; ++it) {
    const double tol = kTieTolerance * std::max(1.0, std::abs(current));
    std::size_t evals = 0;
    NodeId chosen = -1;
    double chosen_value = 0.0;

    if (!lazy) {
      const auto cands = candidate_endpoints(instance, F);
      if (cands.empty()) break;
      std::vector<double> values(cands.size());
      for (std::size_t i = 0; i < cands.size(); ++i) {
        values[i] = eval(F.with(cands[i]), it, cands[i]);
        ++evals;
      }
      const double best = *std::min_element(values.begin(), values.end());
      for (std::size_t i = 0; i < cands.size(); ++i) {
        if (values[i] <= best + tol) {
          chosen = cands[i];
          chosen_value = values[i];
          break;
        }
      }
    } else {
      std::vector<HeapEntry> fresh;
      double best_gain = -std::numeric_limits<double>::infinity();
      while (!heap.empty()) {
        const HeapEntry top = heap.top();
        if (!fresh.empty() && top.gain < best_gain - tol) break;
        heap.pop();
        if (remaining_capacity(instance, F, top.node) == 0) continue;
        if (top.stamp == it) {
          fresh.push_back(top);
          best_gain = std::max(best_gain, top.gain);
          continue;
        }
        const double value = eval(F.with(top.node), it, top.node);
        ++evals;
        heap.push({current - value, top.node, it});
      }
      if (fresh.empty()) break;
      std::sort(fresh.begin(), fresh.end(), [](const HeapEntry& a, const HeapEntry& b) { return a.node < b.node; });
      for (const auto& e : fresh) {
        if (chosen < 0 && e.gain >= best_gain - tol) {
          chosen = e.node;
          chosen_value = current - e.gain;
        }
      }
      // Every popped fresh entry goes back; its gain is a valid stale bound.
      for (const auto& e : fresh) heap.push(e);
    }

    if (exact && current - chosen_value <= kMinImprovement) break;
    F.add(chosen);
    result.trace.steps.push_back({chosen, chosen_value, evals});
    current = chosen_value;
  }
  return result;
}

void check_budget_args(std::size_t k, double epsilon) {
  if (k == 0) throw InvalidParameter("k must be at least 1");
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
}

}  // namespace

std::size_t GreedyTrace::total_evaluations() const {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.evaluations;
  return total;
}

std::size_t greedy_iteration_budget(std::size_t n, std::size_t k, double epsilon, double factor) {
  const double nn = static_cast<double>(n);
  const double tau = std::ceil(factor * static_cast<double>(k) * std::log(nn * nn * nn / epsilon));
  return tau < 1.0 ? 1 : static_cast<std::size_t>(tau);
}

GreedyResult greedy_exact(const BipartiteInstance& instance, std::size_t k, const GreedyOptions& options) {
  check_budget_args(k, options.epsilon);
  const std::size_t budget =
      options.cap_at_k ? k : greedy_iteration_budget(instance.node_count(), k, options.epsilon, 1.0);
  const double initial = hitting_to_blue(AugmentedGraph(instance), options.solver).g;
  auto eval = [&](const ShortcutSet& F, std::size_t, NodeId) {
    return hitting_to_blue(instance, F, options.solver).g;
  };
  return run_greedy(instance, budget, GreedyMode::Exact, options.lazy, initial, eval);
}

GreedyResult greedy_plus(const BipartiteInstance& instance, std::size_t k, const GreedyOptions& options,
                         const EstimatorConfig& estimator) {
  check_budget_args(k, options.epsilon);
  EstimatorConfig base = estimator;
  const bool guarantee = estimator.mode == EstimatorMode::Guarantee;
  if (guarantee) {
    const double cap = 1.0 / (4.0 * static_cast<double>(k));
    if (options.epsilon > cap * (1.0 + 1e-12)) {
      throw InvalidParameter("greedy+ guarantee needs epsilon <= 1/(4k) = " + std::to_string(cap) +
                             ", got " + std::to_string(options.epsilon));
    }
    base.epsilon = options.epsilon;
  }
  // Shortcuts only raise red degrees, so the base graph's radius bounds that
  // of every augmentation.
  if (!base.lambda) {
    base.lambda = spectral_radius(instance);
    base.trust_lambda = true;
  }

  const std::size_t budget =
      options.cap_at_k ? k : greedy_iteration_budget(instance.node_count(), k, options.epsilon, 2.0);

  auto eval = [&](const ShortcutSet& F, std::size_t iteration, NodeId candidate) {
    EstimatorConfig c = base;
    c.seed = derive_seed(estimator.seed, {iteration, static_cast<std::uint64_t>(candidate)});
    return estimate_g(instance, F, c).g_hat;
  };
  EstimatorConfig first = base;
  first.seed = derive_seed(estimator.seed, {kNever});
  const double initial = estimate_g(instance, ShortcutSet{}, first).g_hat;
  return run_greedy(instance, budget, GreedyMode::Estimated, options.lazy, initial, eval);
}

double count_shortcut_multisets(const BipartiteInstance& instance, std::size_t k) {
  const auto cands = candidate_endpoints(instance, ShortcutSet{});
  std::size_t total_cap = 0;
  std::vector<std::size_t> caps;
  for (NodeId r : cands) {
    caps.push_back(remaining_capacity(instance, ShortcutSet{}, r));
    total_cap += caps.back();
  }
  const std::size_t s = std::min(k, total_cap);
  // ways[j] = number of multisets of size j using the nodes seen so far.
  std::vector<double> ways(s + 1, 0.0);
  ways[0] = 1.0;
  for (std::size_t c : caps) {
    std::vector<double> next(s + 1, 0.0);
    for (std::size_t j = 0; j <= s; ++j) {
      for (std::size_t m = 0; m <= c && j + m <= s; ++m) next[j + m] += ways[j];
    }
    ways = std::move(next);
  }
  return ways[s];
}

BruteForceResult brute_force_opt(const BipartiteInstance& instance, std::size_t k, Objective objective,
                                 double limit, const SolverOptions& solver) {
  const double count = count_shortcut_multisets(instance, k);
  if (count > limit) {
    throw InstanceTooLarge(std::to_string(count) + " shortcut multisets exceed the brute-force limit");
  }
  const auto cands = candidate_endpoints(instance, ShortcutSet{});
  std::vector<std::size_t> caps;
  std::size_t total_cap = 0;
  for (NodeId r : cands) {
    caps.push_back(remaining_capacity(instance, ShortcutSet{}, r));
    total_cap += caps.back();
  }
  const std::size_t size = std::min(k, total_cap);

  BruteForceResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<NodeId> chosen;
  std::vector<std::size_t> used(cands.size(), 0);

  // Non-decreasing index sequences enumerate multisets in lexicographic order.
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (chosen.size() == size) {
      ShortcutSet F(chosen);
      const double v = evaluate(instance, F, objective, solver);
      ++best.evaluated;
      if (best.evaluated == 1 || v < best.value - kTieTolerance * std::max(1.0, best.value)) {
        best.value = v;
        best.shortcuts = F;
      }
      return;
    }
    for (std::size_t i = from; i < cands.size(); ++i) {
      if (used[i] == caps[i]) continue;
      ++used[i];
      chosen.push_back(cands[i]);
      rec(i);
      chosen.pop_back();
      --used[i];
    }
  };
  rec(0);
  return best;
}

ShortcutSet pure_random(const BipartiteInstance& instance, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, {}));
  ShortcutSet F;
  for (std::size_t i = 0; i < k; ++i) {
    const auto cands = candidate_endpoints(instance, F);
    if (cands.empty()) break;
    F.add(cands[uniform_below(rng, cands.size())]);
  }
  return F;
}

ShortcutSet top_hitting_baseline(const BipartiteInstance& instance, std::size_t k, const SolverOptions& solver) {
  const auto profile = hitting_to_blue(AugmentedGraph(instance), solver);
  std::vector<NodeId> cands = candidate_endpoints(instance, ShortcutSet{});
  // Quantized so that values equal up to round-off tie and fall back to index order.
  const double quantum = kTieTolerance * std::max(1.0, profile.f) * 100.0;
  auto key = [&](NodeId r) {
    return std::nearbyint(profile.h[static_cast<std::size_t>(instance.red_position(r))] / quantum);
  };
  std::stable_sort(cands.begin(), cands.end(), [&](NodeId a, NodeId b) { return key(a) > key(b); });
  cands.resize(std::min(k, cands.size()));
  return ShortcutSet(std::move(cands));
}

}  // namespace hitaug
