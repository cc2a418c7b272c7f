#include <cmath>

#include "doctest.h"
#include "hitaug/errors.hpp"
#include "hitaug/estimator.hpp"
#include "hitaug/generators.hpp"
#include "hitaug/hitting.hpp"
#include "hitaug/rng.hpp"
#include "oracles.hpp"

using namespace hitaug;

namespace {

BipartiteInstance complete_bipartite(std::size_t reds, std::size_t blues) {
  std::vector<Edge> edges;
  std::vector<Color> colors(reds + blues, Color::Blue);
  for (std::size_t r = 0; r < reds; ++r) {
    colors[r] = Color::Red;
    for (std::size_t b = reds; b < reds + blues; ++b) edges.emplace_back(static_cast<NodeId>(r), static_cast<NodeId>(b));
  }
  return BipartiteInstance::build(reds + blues, edges, colors);
}

std::vector<std::vector<double>> red_block_m(const BipartiteInstance& g) {
  const auto reds = g.red_nodes();
  std::vector<std::vector<double>> m(reds.size(), std::vector<double>(reds.size(), 0.0));
  for (std::size_t i = 0; i < reds.size(); ++i)
    for (std::size_t j = 0; j < reds.size(); ++j)
      if (g.adjacent(reds[i], reds[j]))
        m[i][j] = 1.0 / std::sqrt(static_cast<double>(g.degree(reds[i]) * g.degree(reds[j])));
  return m;
}

}  // namespace

TEST_CASE("truncation length formula") {
  CHECK(truncation_length(1.5, 0.1, 0.1) == 1);
  CHECK(truncation_length(10.0, 0.1, 0.5) == 7);
  CHECK(truncation_length(2.0, 0.1, 0.0) == 1);
  CHECK(truncation_length(2.0, 0.1, 0.999) > 5000);
  CHECK_THROWS_AS(truncation_length(2.0, 0.1, 1.0), InvalidParameter);
  CHECK_THROWS_AS(truncation_length(2.0, 0.0, 0.5), InvalidParameter);
  CHECK_THROWS_AS(truncation_length(0.5, 0.1, 0.5), InvalidParameter);
}

TEST_CASE("larger lambda never shortens the walk") {
  for (double d : {1.0, 2.5, 7.0}) {
    std::size_t prev = 0;
    for (double lambda = 0.0; lambda < 0.99; lambda += 0.01) {
      const std::size_t ell = truncation_length(d, 0.1, lambda);
      CHECK(ell >= prev);
      prev = ell;
    }
  }
}

TEST_CASE("sample count formula") {
  CHECK(sample_count(10, 0.1, 0.01, 100) == 99035);
  CHECK(sample_count(2, 0.5, 0.5, 5) == 48);
  CHECK(sample_count(1, 1.0, 0.1, 10) == static_cast<std::uint64_t>(std::ceil(std::log(200.0))));
}

TEST_CASE("bounded walks") {
  std::mt19937_64 rng(1);
  const auto kb = complete_bipartite(3, 2);
  const AugmentedGraph kview(kb);
  for (int i = 0; i < 100; ++i) CHECK(bounded_walk(kview, 0, 10, rng) == 1);

  const auto p5 = gen_path(5, {2});
  const AugmentedGraph view(p5);
  CHECK(bounded_walk(view, 0, 0, rng) == 0);
  for (int i = 0; i < 100; ++i) CHECK(bounded_walk(view, 1, 1, rng) == 1);
  for (int i = 0; i < 100; ++i) CHECK(bounded_walk(view, 0, 50, rng) % 2 == 0);  // 0 -> 2 has even length
}

TEST_CASE("spectral radius") {
  const auto p5 = gen_path(5, {2});
  CHECK(spectral_radius(p5) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(spectral_radius(complete_bipartite(4, 2)) == 0.0);
  CHECK(spectral_radius(gen_path(3, {0, 2})) == 0.0);

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = gen_planted_two_community(10, 6, 0.5, 0.1, seed);
    const double oracle = oracle::symmetric_spectral_radius(red_block_m(g));
    const double lam = spectral_radius(g);
    CHECK(lam >= oracle * (1.0 - 1e-12));
    CHECK(lam <= oracle * (1.0 + 1e-5));
    CHECK(lam < 1.0);
  }
}

TEST_CASE("complete bipartite estimate is exactly one") {
  EstimatorConfig c;
  c.epsilon = 0.3;
  c.seed = 4;
  const auto e = estimate_g(complete_bipartite(5, 3), ShortcutSet{}, c);
  CHECK(e.g_hat == 1.0);
  CHECK(e.params.walk_length == 1);
}

TEST_CASE("experiment mode converges to the truncated mean from below g") {
  const auto g = gen_planted_two_community(6, 4, 0.6, 0.2, 21);
  const AugmentedGraph view(g);
  const double exact_g = hitting_to_blue(view).g;
  const auto adj = oracle::adjacency_of(view);
  std::vector<char> blue(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) blue[v] = g.is_blue(static_cast<NodeId>(v));

  for (std::size_t ell : {2u, 5u, 12u}) {
    double p1 = 0.0;
    for (NodeId r : g.red_nodes()) p1 += oracle::truncated_mean(adj, blue, r, ell);
    p1 /= static_cast<double>(g.red_count());
    CHECK(p1 <= exact_g);

    EstimatorConfig c;
    c.mode = EstimatorMode::Experiment;
    c.lambda = 0.5;
    c.walk_length = ell;
    c.samples_per_node = 200000;
    c.seed = ell;
    const auto e = estimate_g(view, c);
    // Each walk length is bounded by ell, so the mean over 6 * 2e5 walks has
    // standard error at most ell / sqrt(1.2e6).
    CHECK(std::abs(e.g_hat - p1) <= 4.0 * static_cast<double>(ell) / std::sqrt(1.2e6));
  }
}

TEST_CASE("guarantee mode on path-5 lands in (1 +- eps) g") {
  const auto p5 = gen_path(5, {2});
  int hits = 0;
  constexpr int runs = 20;
  for (int s = 0; s < runs; ++s) {
    EstimatorConfig c;
    c.epsilon = 0.1;
    c.delta = 0.1;
    c.seed = 1000 + s;
    const auto e = estimate_g(p5, ShortcutSet{}, c);
    CHECK(e.params.epsilon == doctest::Approx(0.05));
    CHECK(e.params.walk_length == 13);
    if (e.g_hat >= 3.15 && e.g_hat <= 3.85) ++hits;
  }
  CHECK(hits >= 18);
}

TEST_CASE("determinism under a fixed seed") {
  const auto g = gen_planted_two_community(8, 5, 0.5, 0.2, 3);
  auto c = EstimatorConfig::experiment(77);
  c.subsample_fraction = 0.5;
  c.samples_per_node = 5000;
  c.walk_length = 20;
  const auto a = estimate_g(g, ShortcutSet{}, c);
  const auto b = estimate_g(g, ShortcutSet{}, c);
  CHECK(a.g_hat == b.g_hat);
  CHECK(a.starts == b.starts);
  CHECK(a.starts.size() == 4);
  c.seed = 78;
  CHECK(estimate_g(g, ShortcutSet{}, c).g_hat != a.g_hat);
}

TEST_CASE("parameter validation") {
  const auto p5 = gen_path(5, {2});
  EstimatorConfig c;
  c.lambda = 0.2;  // below the radius 1/sqrt(2)
  CHECK_THROWS_AS(estimate_g(p5, ShortcutSet{}, c), InvalidParameter);
  c.lambda = 0.9;
  CHECK_NOTHROW(resolve_estimator(AugmentedGraph(p5), c));

  EstimatorConfig sub;
  sub.subsample_fraction = 0.5;
  CHECK_THROWS_AS(resolve_estimator(AugmentedGraph(p5), sub), InvalidParameter);

  EstimatorConfig manual;
  manual.walk_length = 4;
  CHECK_THROWS_AS(resolve_estimator(AugmentedGraph(p5), manual), InvalidParameter);

  EstimatorConfig bad_eps;
  bad_eps.epsilon = 1.5;
  CHECK_THROWS_AS(resolve_estimator(AugmentedGraph(p5), bad_eps), InvalidParameter);

  auto exp = EstimatorConfig::experiment(0);
  const auto r = resolve_estimator(AugmentedGraph(p5), exp);
  CHECK(r.start_nodes == 1);
  CHECK(r.epsilon == 0.1);
  CHECK(r.walk_length == truncation_length(1.5, 0.1, 0.1));
}

TEST_CASE("derived seeds separate streams") {
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  CHECK(derive_seed(9, {4, 5}) == derive_seed(9, {4, 5}));
}
