#include "hitaug/graph.hpp"

#include <algorithm>
#include <numeric>

#include "hitaug/errors.hpp"

namespace hitaug {

namespace {

bool is_connected(const std::vector<std::size_t>& offsets, const std::vector<NodeId>& targets,
                  std::size_t n) {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (std::size_t i = offsets[v]; i < offsets[v + 1]; ++i) {
      const NodeId w = targets[i];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace

BipartiteInstance BipartiteInstance::build(std::size_t node_count, std::span<const Edge> edges,
                                           std::vector<Color> colors,
                                           std::vector<std::string> names,
                                           std::size_t* duplicates_dropped) {
  if (node_count == 0) throw MalformedInput("graph has no nodes");
  if (colors.size() != node_count) {
    throw InvalidBipartition("color labels given for " + std::to_string(colors.size()) +
                             " nodes, graph has " + std::to_string(node_count));
  }
  if (!names.empty() && names.size() != node_count) {
    throw MalformedInput("node name table does not match node count");
  }

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count ||
        static_cast<std::size_t>(v) >= node_count) {
      throw MalformedInput("edge endpoint out of range: " + std::to_string(u) + " " +
                           std::to_string(v));
    }
    if (u == v) throw MalformedInput("self-loop at node " + std::to_string(u));
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  const auto last = std::unique(canon.begin(), canon.end());
  if (duplicates_dropped) *duplicates_dropped = static_cast<std::size_t>(canon.end() - last);
  canon.erase(last, canon.end());

  BipartiteInstance inst;
  inst.colors_ = std::move(colors);
  inst.offsets_.assign(node_count + 1, 0);
  for (const auto& [u, v] : canon) {
    ++inst.offsets_[u + 1];
    ++inst.offsets_[v + 1];
  }
  std::partial_sum(inst.offsets_.begin(), inst.offsets_.end(), inst.offsets_.begin());
  inst.targets_.resize(inst.offsets_.back());
  std::vector<std::size_t> fill(inst.offsets_.begin(), inst.offsets_.end() - 1);
  for (const auto& [u, v] : canon) {
    inst.targets_[fill[u]++] = v;
    inst.targets_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    std::sort(inst.targets_.begin() + inst.offsets_[v], inst.targets_.begin() + inst.offsets_[v + 1]);
  }

  inst.red_pos_.assign(node_count, -1);
  for (std::size_t v = 0; v < node_count; ++v) {
    if (inst.colors_[v] == Color::Red) {
      inst.red_pos_[v] = static_cast<std::int32_t>(inst.red_.size());
      inst.red_.push_back(static_cast<NodeId>(v));
    } else {
      inst.blue_.push_back(static_cast<NodeId>(v));
    }
  }
  if (inst.red_.empty()) throw InvalidBipartition("red group is empty");
  if (inst.blue_.empty()) throw InvalidBipartition("blue group is empty");

  if (!is_connected(inst.offsets_, inst.targets_, node_count)) {
    throw DisconnectedGraph("graph with " + std::to_string(node_count) +
                            " nodes is not connected");
  }

  inst.blue_degree_.assign(node_count, 0);
  for (std::size_t v = 0; v < node_count; ++v) {
    for (NodeId w : inst.neighbors(static_cast<NodeId>(v))) {
      if (inst.colors_[w] == Color::Blue) ++inst.blue_degree_[v];
    }
  }

  if (names.empty()) {
    names.reserve(node_count);
    for (std::size_t v = 0; v < node_count; ++v) names.push_back(std::to_string(v));
  }
  inst.names_ = std::move(names);
  inst.index_.reserve(node_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    if (!inst.index_.emplace(inst.names_[v], static_cast<NodeId>(v)).second) {
      throw MalformedInput("duplicate node name '" + inst.names_[v] + "'");
    }
  }
  return inst;
}

bool BipartiteInstance::adjacent(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> BipartiteInstance::find(const std::string& name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<Edge> BipartiteInstance::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(static_cast<NodeId>(u))) {
      if (static_cast<NodeId>(u) < v) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

ShortcutSet::ShortcutSet(std::vector<NodeId> endpoints) : endpoints_(std::move(endpoints)) {
  std::sort(endpoints_.begin(), endpoints_.end());
}

void ShortcutSet::add(NodeId red) {
  endpoints_.insert(std::upper_bound(endpoints_.begin(), endpoints_.end(), red), red);
}

std::size_t ShortcutSet::count(NodeId red) const {
  const auto [lo, hi] = std::equal_range(endpoints_.begin(), endpoints_.end(), red);
  return static_cast<std::size_t>(hi - lo);
}

ShortcutSet ShortcutSet::with(NodeId red) const {
  ShortcutSet out = *this;
  out.add(red);
  return out;
}

void ShortcutSet::validate(const BipartiteInstance& instance) const {
  for (std::size_t i = 0; i < endpoints_.size(); ++i) {
    const NodeId r = endpoints_[i];
    if (r < 0 || static_cast<std::size_t>(r) >= instance.node_count()) {
      throw InvalidParameter("shortcut endpoint " + std::to_string(r) + " out of range");
    }
    if (!instance.is_red(r)) {
      throw InvalidParameter("shortcut endpoint " + instance.name(r) + " is not red");
    }
    if (i > 0 && endpoints_[i - 1] == r) continue;
    const std::size_t room = instance.blue_count() - instance.blue_degree(r);
    if (count(r) > room) {
      throw CapacityExceeded("red node " + instance.name(r) + " takes " +
                             std::to_string(count(r)) + " shortcuts but only " +
                             std::to_string(room) + " blue nodes are non-adjacent");
    }
  }
}

std::size_t remaining_capacity(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                               NodeId red) {
  const std::size_t used = instance.blue_degree(red) + shortcuts.count(red);
  return used >= instance.blue_count() ? 0 : instance.blue_count() - used;
}

std::vector<NodeId> candidate_endpoints(const BipartiteInstance& instance,
                                        const ShortcutSet& shortcuts) {
  std::vector<NodeId> out;
  for (NodeId r : instance.red_nodes()) {
    if (remaining_capacity(instance, shortcuts, r) > 0) out.push_back(r);
  }
  return out;
}

AugmentedGraph::AugmentedGraph(const BipartiteInstance& base) : base_(&base) {}

AugmentedGraph::AugmentedGraph(const BipartiteInstance& base, const ShortcutSet& shortcuts)
    : base_(&base), shortcuts_(shortcuts) {
  if (shortcuts_.empty()) return;
  shortcuts_.validate(base);

  const std::size_t n = base.node_count();
  const auto blues = base.blue_nodes();
  // Assign blue endpoints: for each red endpoint, walk the blue list in index
  // order and take the first ones that are not already neighbors.
  const auto ends = shortcuts_.endpoints();
  for (std::size_t i = 0; i < ends.size();) {
    const NodeId r = ends[i];
    std::size_t mult = 0;
    while (i + mult < ends.size() && ends[i + mult] == r) ++mult;
    std::size_t placed = 0;
    for (NodeId b : blues) {
      if (placed == mult) break;
      if (!base.adjacent(r, b)) {
        shortcut_edges_.emplace_back(r, b);
        ++placed;
      }
    }
    i += mult;
  }

  extra_offsets_.assign(n + 1, 0);
  for (const auto& [r, b] : shortcut_edges_) {
    ++extra_offsets_[r + 1];
    ++extra_offsets_[b + 1];
  }
  std::partial_sum(extra_offsets_.begin(), extra_offsets_.end(), extra_offsets_.begin());
  extra_targets_.resize(extra_offsets_.back());
  std::vector<std::size_t> fill(extra_offsets_.begin(), extra_offsets_.end() - 1);
  for (const auto& [r, b] : shortcut_edges_) {
    extra_targets_[fill[r]++] = b;
    extra_targets_[fill[b]++] = r;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(extra_targets_.begin() + extra_offsets_[v], extra_targets_.begin() + extra_offsets_[v + 1]);
  }
}

std::span<const NodeId> AugmentedGraph::shortcut_neighbors(NodeId v) const {
  if (extra_offsets_.empty()) return {};
  return {extra_targets_.data() + extra_offsets_[v], extra_targets_.data() + extra_offsets_[v + 1]};
}

std::vector<NodeId> AugmentedGraph::neighbors(NodeId v) const {
  const auto base_nb = base_->neighbors(v);
  const auto extra = shortcut_neighbors(v);
  std::vector<NodeId> out;
  out.reserve(base_nb.size() + extra.size());
  std::merge(base_nb.begin(), base_nb.end(), extra.begin(), extra.end(), std::back_inserter(out));
  return out;
}

std::vector<Edge> AugmentedGraph::shortcut_edges() const { return shortcut_edges_; }

double mean_red_degree(const AugmentedGraph& graph) {
  const auto reds = graph.base().red_nodes();
  double total = 0.0;
  for (NodeId r : reds) total += static_cast<double>(graph.degree(r));
  return total / static_cast<double>(reds.size());
}

double mean_red_degree(const BipartiteInstance& instance) {
  return mean_red_degree(AugmentedGraph(instance));
}

std::size_t max_degree(const BipartiteInstance& instance, std::span<const NodeId> nodes) {
  std::size_t best = 0;
  for (NodeId v : nodes) best = std::max(best, instance.degree(v));
  return best;
}

}  // namespace hitaug
