#include "hitaug/kcenter.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "hitaug/errors.hpp"

namespace hitaug {

QuasiMetric::QuasiMetric(std::vector<NodeId> red, std::vector<double> table)
    : red_(std::move(red)), d_(std::move(table)) {
  if (d_.size() != point_count() * point_count()) {
    throw InvalidParameter("quasi-metric table has the wrong size");
  }
}

double QuasiMetric::max_triangle_violation() const {
  const std::size_t p = point_count();
  double worst = 0.0;
  for (std::size_t x = 0; x < p; ++x) {
    for (std::size_t z = 0; z < p; ++z) {
      const double xz = (*this)(x, z);
      for (std::size_t y = 0; y < p; ++y) {
        worst = std::max(worst, (*this)(x, y) - xz - (*this)(z, y));
      }
    }
  }
  return worst;
}

QuasiMetric build_quasi_metric(const BipartiteInstance& instance, const SolverOptions& solver) {
  const auto reds = instance.red_nodes();
  const std::size_t r = reds.size();
  if (r > kMaxQuasiMetricReds) {
    throw InstanceTooLarge("quasi-metric over " + std::to_string(r) + " red nodes exceeds the dense limit of " +
                           std::to_string(kMaxQuasiMetricReds));
  }
  const std::size_t p = r + 1;
  std::vector<double> d(p * p, 0.0);
  const AugmentedGraph graph(instance);

  for (std::size_t j = 0; j < r; ++j) {
    const auto col = hitting_to_target(graph, reds[j], solver);
    for (std::size_t i = 0; i < r; ++i) d[i * p + j] = col[reds[i]];
    double worst = 0.0;
    for (NodeId b : instance.blue_nodes()) worst = std::max(worst, col[b]);
    d[r * p + j] = worst;
  }
  const auto to_blue = hitting_to_blue(graph, solver);
  for (std::size_t i = 0; i < r; ++i) d[i * p + r] = to_blue.h[i];
  return QuasiMetric({reds.begin(), reds.end()}, std::move(d));
}

double covering_radius(const QuasiMetric& qm, const std::vector<std::size_t>& centers) {
  double radius = 0.0;
  for (std::size_t v = 0; v < qm.point_count(); ++v) {
    double nearest = qm(v, qm.b());
    for (std::size_t c : centers) nearest = std::min(nearest, qm(v, c));
    radius = std::max(radius, nearest);
  }
  return radius;
}

namespace {

std::vector<char> eligible_mask(const QuasiMetric& qm, const std::vector<char>& eligible) {
  if (eligible.empty()) return std::vector<char>(qm.red_count(), 1);
  if (eligible.size() != qm.red_count()) throw InvalidParameter("eligibility mask has the wrong size");
  return eligible;
}

// Greedy cover at a fixed threshold; returns false if more than k centers are
// needed or some point cannot be covered at all.
bool greedy_cover(const QuasiMetric& qm, double threshold, std::size_t k, const std::vector<char>& eligible,
                  std::vector<std::size_t>& centers) {
  const std::size_t p = qm.point_count();
  centers.clear();
  std::vector<char> covered(p, 0);
  std::size_t open = 0;
  for (std::size_t v = 0; v < p; ++v) {
    covered[v] = qm(v, qm.b()) <= threshold;
    if (!covered[v]) ++open;
  }
  while (open > 0) {
    if (centers.size() == k) return false;
    std::size_t best = p, best_gain = 0;
    for (std::size_t c = 0; c < qm.red_count(); ++c) {
      if (!eligible[c]) continue;
      std::size_t gain = 0;
      for (std::size_t v = 0; v < p; ++v) {
        if (!covered[v] && qm(v, c) <= threshold) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best == p) return false;
    centers.push_back(best);
    for (std::size_t v = 0; v < p; ++v) {
      if (!covered[v] && qm(v, best) <= threshold) {
        covered[v] = 1;
        --open;
      }
    }
  }
  return true;
}

}  // namespace

CenterSolution asym_k_center_fixed(const QuasiMetric& qm, std::size_t k, const std::vector<char>& eligible) {
  if (k == 0) throw InvalidParameter("k must be at least 1");
  const auto mask = eligible_mask(qm, eligible);

  std::vector<double> values;
  values.reserve(qm.point_count() * qm.point_count());
  for (std::size_t u = 0; u < qm.point_count(); ++u) {
    for (std::size_t v = 0; v < qm.point_count(); ++v) values.push_back(qm(u, v));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // The largest distance is always feasible: b alone covers every point.
  std::size_t lo = 0, hi = values.size() - 1;
  std::vector<std::size_t> centers, trial;
  greedy_cover(qm, values[hi], k, mask, centers);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (greedy_cover(qm, values[mid], k, mask, trial)) {
      hi = mid;
      centers = trial;
    } else {
      lo = mid + 1;
    }
  }
  std::sort(centers.begin(), centers.end());
  return {centers, covering_radius(qm, centers)};
}

CenterSolution asym_k_center_brute_force(const QuasiMetric& qm, std::size_t k, const std::vector<char>& eligible,
                                         double limit) {
  const auto mask = eligible_mask(qm, eligible);
  std::vector<std::size_t> pool;
  for (std::size_t c = 0; c < qm.red_count(); ++c) {
    if (mask[c]) pool.push_back(c);
  }
  const std::size_t size = std::min(k, pool.size());
  double count = 1.0;
  for (std::size_t i = 0; i < size; ++i) {
    count = count * static_cast<double>(pool.size() - i) / static_cast<double>(i + 1);
  }
  if (count > limit) {
    throw InstanceTooLarge(std::to_string(count) + " center sets exceed the brute-force limit");
  }

  CenterSolution best{{}, std::numeric_limits<double>::infinity()};
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (chosen.size() == size) {
      const double radius = covering_radius(qm, chosen);
      if (radius < best.radius) best = {chosen, radius};
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      chosen.push_back(pool[i]);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

AsymmResult asymm(const BipartiteInstance& instance, std::size_t k, const SolverOptions& solver) {
  if (k == 0) throw InvalidParameter("k must be at least 1");
  const auto qm = build_quasi_metric(instance, solver);
  std::vector<char> eligible(qm.red_count(), 0);
  for (std::size_t i = 0; i < qm.red_count(); ++i) {
    eligible[i] = remaining_capacity(instance, ShortcutSet{}, qm.node(i)) > 0;
  }

  AsymmResult out;
  out.centers = asym_k_center_fixed(qm, k, eligible);
  for (std::size_t c : out.centers.centers) {
    const NodeId v = qm.node(c);
    out.center_nodes.push_back(v);
    if (remaining_capacity(instance, out.shortcuts, v) > 0) out.shortcuts.add(v);
  }
  out.max_center_degree = max_degree(instance, out.center_nodes);
  return out;
}

ShortcutSet bmmh_via_bmah(const BipartiteInstance& instance, std::size_t k, double epsilon, BmahRoute route,
                          const EstimatorConfig& estimator) {
  if (k == 0) return {};
  GreedyOptions opts;
  opts.epsilon = epsilon;
  opts.cap_at_k = true;
  if (route == BmahRoute::Exact) return greedy_exact(instance, k, opts).shortcuts;
  return greedy_plus(instance, k, opts, estimator).shortcuts;
}

LowerBound lower_bound_check(const BipartiteInstance& instance, std::size_t k, double limit) {
  const auto qm = build_quasi_metric(instance);
  LowerBound out;
  out.center_optimum = k == 0 ? covering_radius(qm, {}) : asym_k_center_brute_force(qm, k, {}, limit).radius;
  out.max_hitting_optimum = brute_force_opt(instance, k, Objective::Maximum, limit).value;
  return out;
}

}  // namespace hitaug
