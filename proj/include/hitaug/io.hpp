#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hitaug/graph.hpp"

namespace hitaug {

// Reads a whitespace-separated "u v" edge list ('#' starts a comment) and a
// "node R|B" partition listing. Node names are arbitrary tokens; when every
// name is a non-negative integer the dense index order follows the numeric
// value, otherwise first appearance (edge list first, then partition).
// Non-fatal issues such as merged duplicate edges are appended to `warnings`.
BipartiteInstance load_instance(std::istream& edge_list, std::istream& partition,
                                std::vector<std::string>* warnings = nullptr);

// "-" reads from standard input (at most one of the two may be "-").
BipartiteInstance load_instance_files(const std::string& edge_list_path,
                                      const std::string& partition_path,
                                      std::vector<std::string>* warnings = nullptr);

void write_edge_list(std::ostream& out, const BipartiteInstance& instance);
void write_partition(std::ostream& out, const BipartiteInstance& instance);

// Shortcut list: one red node name per line, repeated names for multiplicity.
ShortcutSet read_shortcuts(std::istream& in, const BipartiteInstance& instance);

}  // namespace hitaug
