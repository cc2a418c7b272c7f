#pragma once

#include <cstddef>
#include <vector>

#include "hitaug/graph.hpp"
#include "hitaug/hitting.hpp"
#include "hitaug/optimizers.hpp"

namespace hitaug {

// Asymmetric distances on the red nodes plus one synthetic point b standing
// for the whole blue set. Point i < red_count() is the i-th red node; point
// red_count() is b.
//   d(u, v) = H(u, v)            u, v red
//   d(u, b) = H(u, B)
//   d(b, v) = max_{i in B} H(i, v)
//   d(b, b) = 0
class QuasiMetric {
 public:
  QuasiMetric(std::vector<NodeId> red, std::vector<double> table);

  std::size_t point_count() const { return red_.size() + 1; }
  std::size_t red_count() const { return red_.size(); }
  std::size_t b() const { return red_.size(); }
  NodeId node(std::size_t point) const { return red_[point]; }

  double operator()(std::size_t from, std::size_t to) const { return d_[from * point_count() + to]; }

  // Largest violation max(0, d(x,y) - d(x,z) - d(z,y)) over all triples.
  double max_triangle_violation() const;

 private:
  std::vector<NodeId> red_;
  std::vector<double> d_;
};

constexpr std::size_t kMaxQuasiMetricReds = 5000;

QuasiMetric build_quasi_metric(const BipartiteInstance& instance, const SolverOptions& solver = {});

struct CenterSolution {
  std::vector<std::size_t> centers;  // point indices, b excluded
  double radius = 0.0;               // max over points of d(point, centers + b)
};

// max_v min_{c in centers + {b}} d(v, c).
double covering_radius(const QuasiMetric& qm, const std::vector<std::size_t>& centers);

// Threshold search with a greedy cover. Every point within r of b is covered
// for free; then the center covering the most uncovered points is added until
// all are covered. The smallest threshold (binary search over the distinct
// distances) whose cover needs at most k centers wins. `eligible`, when
// non-empty, restricts which points may be centers (points still have to be
// covered).
CenterSolution asym_k_center_fixed(const QuasiMetric& qm, std::size_t k,
                                   const std::vector<char>& eligible = {});

// Exhaustive optimum over center sets of size min(k, |eligible|).
CenterSolution asym_k_center_brute_force(const QuasiMetric& qm, std::size_t k,
                                         const std::vector<char>& eligible = {}, double limit = 1e6);

struct AsymmResult {
  ShortcutSet shortcuts;
  CenterSolution centers;
  std::vector<NodeId> center_nodes;
  std::size_t max_center_degree = 0;  // degree in the original graph
};

// Quasi-metric + fixed-center k-center, then one shortcut per center. Only
// red nodes that can still take a shortcut are offered as centers.
AsymmResult asymm(const BipartiteInstance& instance, std::size_t k, const SolverOptions& solver = {});

enum class BmahRoute { Exact, Estimated };

// Solves the average objective and reports the set for the maximum
// objective; an alpha-approximation there is a 2|R|^(3/4) alpha one here.
ShortcutSet bmmh_via_bmah(const BipartiteInstance& instance, std::size_t k, double epsilon, BmahRoute route,
                          const EstimatorConfig& estimator = EstimatorConfig::experiment(0));

struct LowerBound {
  double center_optimum = 0.0;    // optimal fixed-center k-center radius
  double max_hitting_optimum = 0.0;  // optimal f with k shortcuts
};

// Both optima by exhaustive search. Throws InstanceTooLarge past the limits.
LowerBound lower_bound_check(const BipartiteInstance& instance, std::size_t k, double limit = 1e6);

}  // namespace hitaug
