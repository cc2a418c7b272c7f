#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hitaug {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

enum class Color : std::uint8_t { Red, Blue };

// Undirected, simple, connected graph with a valid red/blue bipartition.
// Immutable after construction; adjacency is stored in CSR form with sorted
// neighbor lists.
class BipartiteInstance {
 public:
  // Validates and builds. Duplicate edges (in either orientation) are merged;
  // their count is reported through `duplicates_dropped` when non-null.
  static BipartiteInstance build(std::size_t node_count, std::span<const Edge> edges,
                                 std::vector<Color> colors,
                                 std::vector<std::string> names = {},
                                 std::size_t* duplicates_dropped = nullptr);

  std::size_t node_count() const { return colors_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(NodeId u, NodeId v) const;

  Color color(NodeId v) const { return colors_[v]; }
  bool is_red(NodeId v) const { return colors_[v] == Color::Red; }
  bool is_blue(NodeId v) const { return colors_[v] == Color::Blue; }

  std::span<const NodeId> red_nodes() const { return red_; }
  std::span<const NodeId> blue_nodes() const { return blue_; }
  std::size_t red_count() const { return red_.size(); }
  std::size_t blue_count() const { return blue_.size(); }

  // Position of a red node inside red_nodes(), or -1 for blue nodes.
  std::int32_t red_position(NodeId v) const { return red_pos_[v]; }

  // Number of blue neighbors in the original graph.
  std::size_t blue_degree(NodeId v) const { return blue_degree_[v]; }

  const std::string& name(NodeId v) const { return names_[v]; }
  std::optional<NodeId> find(const std::string& name) const;

  std::vector<Edge> edges() const;

 private:
  BipartiteInstance() = default;

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Color> colors_;
  std::vector<NodeId> red_;
  std::vector<NodeId> blue_;
  std::vector<std::int32_t> red_pos_;
  std::vector<std::uint32_t> blue_degree_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

// Multiset of red endpoints. The blue endpoint of each shortcut is left
// implicit; any choice gives the same hitting times to the blue set.
class ShortcutSet {
 public:
  ShortcutSet() = default;
  explicit ShortcutSet(std::vector<NodeId> endpoints);

  void add(NodeId red);
  std::size_t count(NodeId red) const;
  std::size_t size() const { return endpoints_.size(); }
  bool empty() const { return endpoints_.empty(); }

  // Sorted ascending, duplicates adjacent.
  std::span<const NodeId> endpoints() const { return endpoints_; }

  ShortcutSet with(NodeId red) const;

  // Throws InvalidParameter for blue/out-of-range entries and
  // CapacityExceeded when a red node is oversubscribed.
  void validate(const BipartiteInstance& instance) const;

  friend bool operator==(const ShortcutSet&, const ShortcutSet&) = default;

 private:
  std::vector<NodeId> endpoints_;
};

// Remaining shortcut slots at a red node: |B| minus current blue neighbors.
std::size_t remaining_capacity(const BipartiteInstance& instance, const ShortcutSet& shortcuts,
                               NodeId red);

// Red nodes that can still take a shortcut, ascending.
std::vector<NodeId> candidate_endpoints(const BipartiteInstance& instance,
                                        const ShortcutSet& shortcuts);

// The graph G + F. Shortcut edges live in a small side table so the base
// instance is shared, not copied. Each multiset entry for red node r is wired
// to the lowest-index blue node not yet adjacent to r.
class AugmentedGraph {
 public:
  AugmentedGraph(const BipartiteInstance& base, const ShortcutSet& shortcuts);
  explicit AugmentedGraph(const BipartiteInstance& base);

  const BipartiteInstance& base() const { return *base_; }
  const ShortcutSet& shortcuts() const { return shortcuts_; }

  std::size_t node_count() const { return base_->node_count(); }
  std::size_t edge_count() const { return base_->edge_count() + shortcuts_.size(); }

  std::size_t degree(NodeId v) const {
    return base_->degree(v) + (extra_offsets_.empty() ? 0 : extra_offsets_[v + 1] - extra_offsets_[v]);
  }
  NodeId neighbor(NodeId v, std::size_t i) const {
    const std::size_t d = base_->degree(v);
    return i < d ? base_->neighbors(v)[i] : extra_targets_[extra_offsets_[v] + (i - d)];
  }
  std::span<const NodeId> shortcut_neighbors(NodeId v) const;

  // Sorted merged neighbor list; allocates.
  std::vector<NodeId> neighbors(NodeId v) const;

  // Shortcut edges as (red, blue) pairs, in endpoint order.
  std::vector<Edge> shortcut_edges() const;

  bool is_blue(NodeId v) const { return base_->is_blue(v); }

 private:
  const BipartiteInstance* base_;
  ShortcutSet shortcuts_;
  std::vector<std::size_t> extra_offsets_;
  std::vector<NodeId> extra_targets_;
  std::vector<Edge> shortcut_edges_;
};

// Arithmetic mean of red-node degrees in the (possibly augmented) graph.
double mean_red_degree(const AugmentedGraph& graph);
double mean_red_degree(const BipartiteInstance& instance);

std::size_t max_degree(const BipartiteInstance& instance, std::span<const NodeId> nodes);

}  // namespace hitaug
