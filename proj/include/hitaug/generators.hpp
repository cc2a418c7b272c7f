#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hitaug/graph.hpp"

namespace hitaug {

// Path 0 - 1 - ... - (length-1); listed positions are blue, the rest red.
BipartiteInstance gen_path(std::size_t length, const std::vector<std::size_t>& blue_positions);

// Star of n nodes centered at node 0 (the only blue node), plus a path of
// n^(1/4) nodes hanging off the center and a clique of n^(1/4) nodes joined
// to the far end of the path. n must be a perfect fourth power >= 16.
BipartiteInstance gen_star_path_clique(std::size_t n);

// Integer fourth root of n, or 0 if n is not a perfect fourth power.
std::size_t exact_fourth_root(std::size_t n);

// Two planted groups: nodes [0, n_red) red, [n_red, n_red + n_blue) blue.
// Each same-group pair is an edge with probability p_in, each cross pair with
// p_out. Draws are repeated (up to 100 times) until the graph is connected.
BipartiteInstance gen_planted_two_community(std::size_t n_red, std::size_t n_blue, double p_in, double p_out,
                                            std::uint64_t seed);

}  // namespace hitaug
