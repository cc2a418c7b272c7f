#pragma once

#include <cstddef>
#include <vector>

#include "hitaug/graph.hpp"

namespace hitaug {

struct SolverOptions {
  // Transient-state count above which the sparse factorization is used.
  std::size_t dense_threshold = 4000;
  // Bound on the relative residual max|(I-Q)h - 1| / max(1, max h).
  double tolerance = 1e-9;
};

// Expected hitting times from every red node to the blue set.
struct HittingProfile {
  std::vector<NodeId> red;  // red node ids, same order as `h`
  std::vector<double> h;
  double g = 0.0;  // mean of h
  double f = 0.0;  // max of h
  double residual = 0.0;  // max|(I-Q)h - 1| after refinement
};

// Solves (I - Q) h = 1 over the red nodes of G + F. Throws SolverFailure on a
// residual above tolerance and InvariantViolation if g <= f <= 2|R|^(3/4) g or
// h >= 1 fails.
HittingProfile hitting_to_blue(const AugmentedGraph& graph, const SolverOptions& options = {});
HittingProfile hitting_to_blue(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                               const SolverOptions& options = {});

// H(u, target) for every node u (entry `target` is 0).
std::vector<double> hitting_to_target(const AugmentedGraph& graph, NodeId target,
                                      const SolverOptions& options = {});
std::vector<double> hitting_to_target(const BipartiteInstance& instance, NodeId target,
                                      const SolverOptions& options = {});

enum class Objective { Average, Maximum };

double evaluate(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                Objective objective, const SolverOptions& options = {});

// 2|R|^(3/4): the proven bound on f/g.
double ratio_bound(std::size_t red_count);

}  // namespace hitaug
