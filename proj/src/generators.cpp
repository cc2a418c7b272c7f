#include "hitaug/generators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "hitaug/errors.hpp"
#include "hitaug/rng.hpp"

namespace hitaug {

BipartiteInstance gen_path(std::size_t length, const std::vector<std::size_t>& blue_positions) {
  if (length < 3) throw InvalidParameter("path length must be at least 3");
  std::vector<Color> colors(length, Color::Red);
  for (std::size_t p : blue_positions) {
    if (p >= length) throw InvalidParameter("blue position " + std::to_string(p) + " outside the path");
    colors[p] = Color::Blue;
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < length; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  }
  return BipartiteInstance::build(length, edges, std::move(colors));
}

std::size_t exact_fourth_root(std::size_t n) {
  auto q = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 0.25)));
  for (std::size_t c : {q > 0 ? q - 1 : 0, q, q + 1}) {
    if (c > 0 && c * c * c * c == n) return c;
  }
  return 0;
}

BipartiteInstance gen_star_path_clique(std::size_t n) {
  const std::size_t q = exact_fourth_root(n);
  if (n < 16 || q == 0) {
    throw InvalidParameter("star size " + std::to_string(n) + " is not a perfect fourth power >= 16");
  }
  // 0: center; 1..n-1: leaves; n..n+q-1: path; n+q..n+2q-1: clique.
  const std::size_t total = n + 2 * q;
  std::vector<Edge> edges;
  for (std::size_t leaf = 1; leaf < n; ++leaf) edges.emplace_back(0, static_cast<NodeId>(leaf));
  const auto path = [&](std::size_t i) { return static_cast<NodeId>(n + i); };
  const auto clique = [&](std::size_t i) { return static_cast<NodeId>(n + q + i); };
  edges.emplace_back(0, path(0));
  for (std::size_t i = 0; i + 1 < q; ++i) edges.emplace_back(path(i), path(i + 1));
  edges.emplace_back(path(q - 1), clique(0));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = i + 1; j < q; ++j) edges.emplace_back(clique(i), clique(j));
  }
  std::vector<Color> colors(total, Color::Red);
  colors[0] = Color::Blue;
  return BipartiteInstance::build(total, edges, std::move(colors));
}

BipartiteInstance gen_planted_two_community(std::size_t n_red, std::size_t n_blue, double p_in, double p_out,
                                            std::uint64_t seed) {
  if (n_red == 0 || n_blue == 0) throw InvalidParameter("both groups need at least one node");
  if (!(p_in <= 1.0 && p_out > 0.0 && p_in > p_out)) {
    throw InvalidParameter("planted partition needs 1 >= p_in > p_out > 0");
  }
  const std::size_t n = n_red + n_blue;
  std::vector<Color> colors(n, Color::Red);
  for (std::size_t v = n_red; v < n; ++v) colors[v] = Color::Blue;

  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::mt19937_64 rng(derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
    std::bernoulli_distribution same(p_in), cross(p_out);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const bool inside = (u < n_red) == (v < n_red);
        if (inside ? same(rng) : cross(rng)) edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
      }
    }
    try {
      return BipartiteInstance::build(n, edges, colors);
    } catch (const DisconnectedGraph&) {
    }
  }
  throw GenerationFailed("no connected planted-partition graph after " + std::to_string(kAttempts) + " draws");
}

}  // namespace hitaug
