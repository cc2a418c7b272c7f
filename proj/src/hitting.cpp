#include "hitaug/hitting.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hitaug/errors.hpp"

namespace hitaug {

namespace {

// Multiplying (I - Q) h = 1 by the degree matrix gives the symmetric positive
// definite system (D_T - A_TT) h = d_T, where T is the transient set. Any
// transient node with an edge into the absorbing set makes the block strictly
// diagonally dominant on that row, and connectivity does the rest.
class AbsorbingSystem {
 public:
  // `transient[i]` are node ids; `local[v]` is their position or -1.
  AbsorbingSystem(const AugmentedGraph& graph, std::vector<NodeId> transient)
      : graph_(graph), transient_(std::move(transient)), local_(graph.node_count(), -1) {
    for (std::size_t i = 0; i < transient_.size(); ++i) local_[transient_[i]] = static_cast<std::int32_t>(i);
  }

  std::vector<double> solve(const SolverOptions& options, double* residual_out) const {
    const auto m = static_cast<Eigen::Index>(transient_.size());
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) rhs[i] = static_cast<double>(graph_.degree(transient_[i]));

    Eigen::VectorXd h;
    if (transient_.size() <= options.dense_threshold) {
      Eigen::LLT<Eigen::MatrixXd> llt(dense());
      if (llt.info() != Eigen::Success) throw SolverFailure("dense Cholesky factorization failed");
      h = llt.solve(rhs);
      h += llt.solve(Eigen::VectorXd(rhs - apply(h)));
    } else {
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sparse());
      if (ldlt.info() != Eigen::Success) throw SolverFailure("sparse LDLT factorization failed");
      h = ldlt.solve(rhs);
      h += ldlt.solve(Eigen::VectorXd(rhs - apply(h)));
    }
    if (!h.allFinite()) throw SolverFailure("non-finite hitting times");

    // Residual of the unscaled system: ((D - A) h - d) / d = (I - Q) h - 1.
    const Eigen::VectorXd r = apply(h) - rhs;
    double res = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) res = std::max(res, std::abs(r[i]) / rhs[i]);
    const double scale = std::max(1.0, h.size() > 0 ? h.maxCoeff() : 0.0);
    if (res > options.tolerance * scale) {
      throw SolverFailure("residual " + std::to_string(res) + " exceeds tolerance after refinement");
    }
    if (residual_out) *residual_out = res;
    return {h.data(), h.data() + h.size()};
  }

 private:
  Eigen::MatrixXd dense() const {
    const auto m = static_cast<Eigen::Index>(transient_.size());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const NodeId v = transient_[i];
      const std::size_t d = graph_.degree(v);
      L(i, i) = static_cast<double>(d);
      for (std::size_t k = 0; k < d; ++k) {
        const std::int32_t j = local_[graph_.neighbor(v, k)];
        if (j >= 0) L(i, j) -= 1.0;
      }
    }
    return L;
  }

  Eigen::SparseMatrix<double> sparse() const {
    const auto m = static_cast<Eigen::Index>(transient_.size());
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index i = 0; i < m; ++i) {
      const NodeId v = transient_[i];
      const std::size_t d = graph_.degree(v);
      trip.emplace_back(i, i, static_cast<double>(d));
      for (std::size_t k = 0; k < d; ++k) {
        const std::int32_t j = local_[graph_.neighbor(v, k)];
        if (j >= 0) trip.emplace_back(i, j, -1.0);
      }
    }
    Eigen::SparseMatrix<double> L(m, m);
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
  }

  // (D - A) x without forming the matrix.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    const auto m = static_cast<Eigen::Index>(transient_.size());
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const NodeId v = transient_[i];
      const std::size_t d = graph_.degree(v);
      double acc = static_cast<double>(d) * x[i];
      for (std::size_t k = 0; k < d; ++k) {
        const std::int32_t j = local_[graph_.neighbor(v, k)];
        if (j >= 0) acc -= x[j];
      }
      y[i] = acc;
    }
    return y;
  }

  const AugmentedGraph& graph_;
  std::vector<NodeId> transient_;
  std::vector<std::int32_t> local_;
};

}  // namespace

double ratio_bound(std::size_t red_count) {
  return 2.0 * std::pow(static_cast<double>(red_count), 0.75);
}

HittingProfile hitting_to_blue(const AugmentedGraph& graph, const SolverOptions& options) {
  const auto reds = graph.base().red_nodes();
  AbsorbingSystem system(graph, {reds.begin(), reds.end()});

  HittingProfile p;
  p.red.assign(reds.begin(), reds.end());
  p.h = system.solve(options, &p.residual);
  p.g = std::accumulate(p.h.begin(), p.h.end(), 0.0) / static_cast<double>(p.h.size());
  p.f = *std::max_element(p.h.begin(), p.h.end());

  constexpr double slack = 1e-9;
  const double low = *std::min_element(p.h.begin(), p.h.end());
  if (low < 1.0 - slack) {
    throw InvariantViolation("red hitting time " + std::to_string(low) + " below one step");
  }
  if (p.f > ratio_bound(p.h.size()) * p.g * (1.0 + slack)) {
    throw InvariantViolation("f/g = " + std::to_string(p.f / p.g) + " exceeds 2|R|^(3/4) = " +
                             std::to_string(ratio_bound(p.h.size())));
  }
  return p;
}

HittingProfile hitting_to_blue(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                               const SolverOptions& options) {
  return hitting_to_blue(AugmentedGraph(instance, shortcuts), options);
}

std::vector<double> hitting_to_target(const AugmentedGraph& graph, NodeId target,
                                      const SolverOptions& options) {
  const std::size_t n = graph.node_count();
  if (target < 0 || static_cast<std::size_t>(target) >= n) {
    throw InvalidParameter("target node " + std::to_string(target) + " out of range");
  }
  std::vector<NodeId> transient;
  transient.reserve(n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<NodeId>(v) != target) transient.push_back(static_cast<NodeId>(v));
  }
  std::vector<double> out(n, 0.0);
  if (transient.empty()) return out;
  AbsorbingSystem system(graph, transient);
  const auto h = system.solve(options, nullptr);
  for (std::size_t i = 0; i < transient.size(); ++i) out[transient[i]] = h[i];
  return out;
}

std::vector<double> hitting_to_target(const BipartiteInstance& instance, NodeId target,
                                      const SolverOptions& options) {
  return hitting_to_target(AugmentedGraph(instance), target, options);
}

double evaluate(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                Objective objective, const SolverOptions& options) {
  const auto p = hitting_to_blue(instance, shortcuts, options);
  return objective == Objective::Average ? p.g : p.f;
}

}  // namespace hitaug
