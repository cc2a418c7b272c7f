#include "hitaug/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "hitaug/errors.hpp"

namespace hitaug {

namespace {

// Splits a line into tokens, dropping anything after '#'.
std::vector<std::string> tokenize(const std::string& line) {
  const auto hash = line.find('#');
  std::istringstream ss(hash == std::string::npos ? line : line.substr(0, hash));
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(std::move(tok));
  return out;
}

bool as_index(const std::string& s, unsigned long long& value) {
  if (s.empty() || s.size() > 18) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

class NameTable {
 public:
  void see(const std::string& name) {
    if (ids_.emplace(name, order_.size()).second) order_.push_back(name);
  }
  std::size_t size() const { return order_.size(); }

  // Final name order: numeric when every name is an integer, else first seen.
  std::vector<std::string> finalize() {
    std::vector<unsigned long long> numeric(order_.size());
    bool all_numeric = true;
    for (std::size_t i = 0; i < order_.size() && all_numeric; ++i) {
      all_numeric = as_index(order_[i], numeric[i]);
    }
    std::vector<std::size_t> perm(order_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    if (all_numeric) {
      std::sort(perm.begin(), perm.end(),
                [&](std::size_t a, std::size_t b) { return numeric[a] < numeric[b]; });
    }
    std::vector<std::string> names;
    names.reserve(order_.size());
    for (std::size_t i : perm) names.push_back(order_[i]);
    ids_.clear();
    for (std::size_t i = 0; i < names.size(); ++i) ids_.emplace(names[i], i);
    return names;
  }
  NodeId id(const std::string& name) const { return static_cast<NodeId>(ids_.at(name)); }

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::string> order_;
};

}  // namespace

BipartiteInstance load_instance(std::istream& edge_list, std::istream& partition,
                                std::vector<std::string>* warnings) {
  NameTable table;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  std::string line;
  for (std::size_t lineno = 1; std::getline(edge_list, line); ++lineno) {
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) {
      throw MalformedInput("edge list line " + std::to_string(lineno) + ": expected 'u v', got " +
                           std::to_string(tok.size()) + " tokens");
    }
    if (tok[0] == tok[1]) {
      throw MalformedInput("edge list line " + std::to_string(lineno) + ": self-loop at " + tok[0]);
    }
    table.see(tok[0]);
    table.see(tok[1]);
    raw_edges.emplace_back(tok[0], tok[1]);
  }

  std::vector<std::pair<std::string, Color>> labels;
  for (std::size_t lineno = 1; std::getline(partition, line); ++lineno) {
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() != 2 || (tok[1] != "R" && tok[1] != "B")) {
      throw MalformedInput("partition line " + std::to_string(lineno) + ": expected 'node R|B'");
    }
    table.see(tok[0]);
    labels.emplace_back(tok[0], tok[1] == "R" ? Color::Red : Color::Blue);
  }

  auto names = table.finalize();
  const std::size_t n = names.size();
  if (n == 0) throw MalformedInput("no nodes in input");

  std::vector<Color> colors(n, Color::Red);
  std::vector<char> labeled(n, 0);
  for (const auto& [name, color] : labels) {
    const NodeId v = table.id(name);
    if (labeled[v] && colors[v] != color) {
      throw InvalidBipartition("node '" + name + "' is labeled both R and B");
    }
    labeled[v] = 1;
    colors[v] = color;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!labeled[v]) throw InvalidBipartition("node '" + names[v] + "' has no R/B label");
  }

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (const auto& [a, b] : raw_edges) edges.emplace_back(table.id(a), table.id(b));

  std::size_t dropped = 0;
  auto inst = BipartiteInstance::build(n, edges, std::move(colors), std::move(names), &dropped);
  if (dropped > 0 && warnings) {
    warnings->push_back("merged " + std::to_string(dropped) + " duplicate edge(s)");
  }
  return inst;
}

BipartiteInstance load_instance_files(const std::string& edge_list_path,
                                      const std::string& partition_path,
                                      std::vector<std::string>* warnings) {
  if (edge_list_path == "-" && partition_path == "-") {
    throw InvalidParameter("edge list and partition cannot both come from standard input");
  }
  auto open = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open '" + path + "'");
    return in;
  };
  if (edge_list_path == "-") {
    auto part = open(partition_path);
    return load_instance(std::cin, part, warnings);
  }
  auto edges = open(edge_list_path);
  if (partition_path == "-") return load_instance(edges, std::cin, warnings);
  auto part = open(partition_path);
  return load_instance(edges, part, warnings);
}

void write_edge_list(std::ostream& out, const BipartiteInstance& instance) {
  for (const auto& [u, v] : instance.edges()) {
    out << instance.name(u) << ' ' << instance.name(v) << '\n';
  }
}

void write_partition(std::ostream& out, const BipartiteInstance& instance) {
  for (std::size_t v = 0; v < instance.node_count(); ++v) {
    const auto id = static_cast<NodeId>(v);
    out << instance.name(id) << ' ' << (instance.is_red(id) ? 'R' : 'B') << '\n';
  }
}

ShortcutSet read_shortcuts(std::istream& in, const BipartiteInstance& instance) {
  std::vector<NodeId> ends;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() > 2) {
      throw MalformedInput("shortcut line " + std::to_string(lineno) + ": expected 'red [blue]'");
    }
    const auto id = instance.find(tok[0]);
    if (!id) {
      throw MalformedInput("shortcut line " + std::to_string(lineno) + ": unknown node '" + tok[0] + "'");
    }
    // A trailing blue name is accepted and ignored; the blue side is implicit.
    if (tok.size() == 2) {
      const auto blue = instance.find(tok[1]);
      if (!blue || !instance.is_blue(*blue)) {
        throw MalformedInput("shortcut line " + std::to_string(lineno) + ": '" + tok[1] +
                             "' is not a blue node");
      }
    }
    ends.push_back(*id);
  }
  ShortcutSet out(std::move(ends));
  out.validate(instance);
  return out;
}

}  // namespace hitaug
