#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tomolink/error.hpp"

namespace tomolink {

// Nodes are indexed by their rank in the lexicographic order of their
// names, so comparing ids compares names.
using NodeId = std::size_t;

struct Link {
  NodeId u{};
  NodeId v{};

  Link() = default;
  Link(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool has(NodeId x) const { return x == u || x == v; }
  NodeId other(NodeId x) const { return x == u ? v : u; }

  auto operator<=>(const Link&) const = default;
};

// Undirected simple graph on nodes 0..order-1 with sorted adjacency lists
// and a dense adjacency matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t order)
      : adjacency_(order), matrix_(order * order, 0) {}

  std::size_t order() const { return adjacency_.size(); }
  std::size_t link_count() const { return link_count_; }

  bool adjacent(NodeId a, NodeId b) const {
    return matrix_[a * order() + b] != 0;
  }

  const std::vector<NodeId>& neighbors(NodeId x) const {
    return adjacency_[x];
  }

  // Returns false when the link already exists or is a self-loop.
  bool add_link(NodeId a, NodeId b) {
    if (a == b || adjacent(a, b)) return false;
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    matrix_[a * order() + b] = matrix_[b * order() + a] = 1;
    ++link_count_;
    return true;
  }

  bool remove_link(NodeId a, NodeId b) {
    if (a == b || !adjacent(a, b)) return false;
    std::erase(adjacency_[a], b);
    std::erase(adjacency_[b], a);
    matrix_[a * order() + b] = matrix_[b * order() + a] = 0;
    --link_count_;
    return true;
  }

  std::vector<Link> links() const {
    std::vector<Link> out;
    out.reserve(link_count_);
    for (NodeId a = 0; a < order(); ++a) {
      for (NodeId b : adjacency_[a]) {
        if (a < b) out.emplace_back(a, b);
      }
    }
    return out;
  }

 private:
  static void insert_sorted(std::vector<NodeId>& list, NodeId x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  }

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<char> matrix_;
  std::size_t link_count_ = 0;
};

// Connected components of `graph` minus `removed`. Each component is
// sorted; components are ordered by their smallest node.
inline std::vector<std::vector<NodeId>> components(
    const Graph& graph, std::span<const NodeId> removed = {}) {
  std::vector<char> seen(graph.order(), 0);
  for (NodeId x : removed) seen[x] = 1;

  std::vector<std::vector<NodeId>> out;
  for (NodeId start = 0; start < graph.order(); ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> component{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < component.size(); ++head) {
      for (NodeId y : graph.neighbors(component[head])) {
        if (!seen[y]) {
          seen[y] = 1;
          component.push_back(y);
        }
      }
    }
    std::sort(component.begin(), component.end());
    out.push_back(std::move(component));
  }
  return out;
}

// An empty remainder counts as connected.
inline bool is_connected(const Graph& graph,
                         std::span<const NodeId> removed = {}) {
  return components(graph, removed).size() <= 1;
}

class Network {
 public:
  // Validates and canonicalizes. Throws Error{Validation} with a
  // ValidationCode, or Error{MalformedInput} for dangling references.
  static Network create(std::vector<std::string> nodes,
                        const std::vector<std::pair<std::string, std::string>>&
                            links,
                        const std::string& m1, const std::string& m2) {
    Network net;
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
      throw Error(ErrorKind::MalformedInput, "duplicate node identifier");
    }
    for (const auto& name : nodes) {
      if (name.empty()) {
        throw Error(ErrorKind::MalformedInput, "empty node identifier");
      }
    }
    net.names_ = std::move(nodes);
    for (NodeId i = 0; i < net.names_.size(); ++i) net.index_[net.names_[i]] = i;
    net.graph_ = Graph(net.names_.size());

    const auto monitor1 = net.find(m1);
    const auto monitor2 = net.find(m2);
    if (!monitor1 || !monitor2) {
      throw Error(ErrorKind::Validation, "monitor is not a network node",
                  ValidationCode::MonitorMissing);
    }
    if (*monitor1 == *monitor2) {
      throw Error(ErrorKind::Validation, "monitors must be distinct nodes",
                  ValidationCode::MonitorMissing);
    }
    net.m1_ = *monitor1;
    net.m2_ = *monitor2;

    for (const auto& [a, b] : links) {
      const auto x = net.find(a);
      const auto y = net.find(b);
      if (!x || !y) {
        throw Error(ErrorKind::MalformedInput,
                    "link " + a + "-" + b + " references an unknown node");
      }
      if (*x == *y) {
        throw Error(ErrorKind::Validation, "self-loop at " + a,
                    ValidationCode::SelfLoop);
      }
      if (Link(*x, *y) == Link(net.m1_, net.m2_)) {
        throw Error(ErrorKind::Validation, "direct monitor-to-monitor link",
                    ValidationCode::MonitorLink);
      }
      if (!net.graph_.add_link(*x, *y)) {
        throw Error(ErrorKind::Validation, "duplicate link " + a + "-" + b,
                    ValidationCode::DuplicateLink);
      }
    }
    if (!is_connected(net.graph_)) {
      throw Error(ErrorKind::Validation, "network is not connected",
                  ValidationCode::Disconnected);
    }
    return net;
  }

  std::size_t size() const { return names_.size(); }
  const Graph& graph() const { return graph_; }
  std::vector<Link> links() const { return graph_.links(); }
  bool adjacent(NodeId a, NodeId b) const { return graph_.adjacent(a, b); }
  const std::vector<NodeId>& neighbors(NodeId x) const {
    return graph_.neighbors(x);
  }

  NodeId m1() const { return m1_; }
  NodeId m2() const { return m2_; }
  bool is_monitor(NodeId x) const { return x == m1_ || x == m2_; }
  bool is_interior(Link l) const { return !is_monitor(l.u) && !is_monitor(l.v); }

  const std::string& name(NodeId x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<NodeId> find(std::string_view name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId id(std::string_view name) const {
    if (auto x = find(name)) return *x;
    throw Error(ErrorKind::PreconditionFailed,
                "unknown node '" + std::string(name) + "'");
  }

  // "u-v" with endpoints in lexicographic order.
  std::string link_name(Link l) const { return names_[l.u] + "-" + names_[l.v]; }

  // Inverse of link_name. Node names may themselves contain '-', so every
  // split point is tried; the first one naming an existing link wins.
  std::optional<Link> find_link(std::string_view text) const {
    for (auto pos = text.find('-'); pos != std::string_view::npos;
         pos = text.find('-', pos + 1)) {
      const auto a = find(text.substr(0, pos));
      const auto b = find(text.substr(pos + 1));
      if (a && b && *a != *b && adjacent(*a, *b)) return Link(*a, *b);
    }
    return std::nullopt;
  }

  Link link(std::string_view a, std::string_view b) const {
    const NodeId x = id(a);
    const NodeId y = id(b);
    if (x == y || !adjacent(x, y)) {
      throw Error(ErrorKind::PreconditionFailed,
                  "no link " + std::string(a) + "-" + std::string(b));
    }
    return Link(x, y);
  }

 private:
  Network() = default;

  std::vector<std::string> names_;
  std::map<std::string, NodeId, std::less<>> index_;
  Graph graph_;
  NodeId m1_ = 0;
  NodeId m2_ = 0;
};

// ---------------------------------------------------------------------------
// Graph document:
//   {"links": [["a","b"], ...], "monitors": ["m1","m2"], "nodes": [...]}

inline Network network_from_json(const nlohmann::json& doc) {
  auto malformed = [](const std::string& what) {
    return Error(ErrorKind::MalformedInput, "graph document: " + what);
  };
  if (!doc.is_object()) throw malformed("expected an object");
  for (const char* key : {"nodes", "links", "monitors"}) {
    if (!doc.contains(key) || !doc.at(key).is_array()) {
      throw malformed(std::string("missing array '") + key + "'");
    }
  }

  std::vector<std::string> nodes;
  for (const auto& n : doc.at("nodes")) {
    if (!n.is_string()) throw malformed("node identifiers must be strings");
    nodes.push_back(n.get<std::string>());
  }

  std::vector<std::pair<std::string, std::string>> links;
  for (const auto& l : doc.at("links")) {
    if (!l.is_array() || l.size() != 2 || !l[0].is_string() ||
        !l[1].is_string()) {
      throw malformed("each link must be a 2-element array of strings");
    }
    links.emplace_back(l[0].get<std::string>(), l[1].get<std::string>());
  }

  const auto& monitors = doc.at("monitors");
  if (monitors.size() != 2 || !monitors[0].is_string() ||
      !monitors[1].is_string()) {
    throw malformed("monitors must be a 2-element array of strings");
  }
  return Network::create(std::move(nodes), links,
                         monitors[0].get<std::string>(),
                         monitors[1].get<std::string>());
}

inline Network parse_network(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, e.what());
  }
  return network_from_json(doc);
}

inline nlohmann::json to_json(const Network& net) {
  nlohmann::json links = nlohmann::json::array();
  for (const Link& l : net.links()) {
    links.push_back({net.name(l.u), net.name(l.v)});
  }
  return {{"nodes", net.names()},
          {"links", std::move(links)},
          {"monitors", {net.name(net.m1()), net.name(net.m2())}}};
}

// Canonical text: sorted nodes, sorted links, two-space indentation.
inline std::string serialize(const Network& net) {
  return to_json(net).dump(2) + "\n";
}

// ---------------------------------------------------------------------------

struct SimplePath {
  std::vector<NodeId> nodes;

  std::size_t length() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  NodeId front() const { return nodes.front(); }
  NodeId back() const { return nodes.back(); }

  std::vector<Link> links() const {
    std::vector<Link> out;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      out.emplace_back(nodes[i - 1], nodes[i]);
    }
    return out;
  }

  bool contains(NodeId x) const {
    return std::find(nodes.begin(), nodes.end(), x) != nodes.end();
  }

  bool operator==(const SimplePath&) const = default;
};

// Nonempty, no repeated node, consecutive nodes adjacent. A single node
// is a zero-length path.
inline bool is_simple_path(const Network& net, const SimplePath& path) {
  if (path.nodes.empty()) return false;
  std::vector<NodeId> sorted = path.nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  if (sorted.back() >= net.size()) return false;
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    if (!net.adjacent(path.nodes[i - 1], path.nodes[i])) return false;
  }
  return true;
}

struct InteriorDecomposition {
  std::vector<NodeId> interior_nodes;
  std::vector<Link> interior_links;  // l_1 .. l_kh
  std::vector<NodeId> m1_exterior;   // a_1 .. a_k1
  std::vector<NodeId> m2_exterior;   // b_1 .. b_k2
  // [m1 a_1 .. m1 a_k1 | b_1 m2 .. b_k2 m2 | l_1 .. l_kh]
  std::vector<Link> columns;

  std::size_t k1() const { return m1_exterior.size(); }
  std::size_t k2() const { return m2_exterior.size(); }
  std::size_t kh() const { return interior_links.size(); }
  std::size_t exterior_columns() const { return k1() + k2(); }
};

inline InteriorDecomposition interior_decomposition(const Network& net) {
  InteriorDecomposition d;
  for (NodeId x = 0; x < net.size(); ++x) {
    if (!net.is_monitor(x)) d.interior_nodes.push_back(x);
  }
  if (d.interior_nodes.empty()) {
    throw Error(ErrorKind::EmptyInterior, "network has no interior node");
  }
  for (const Link& l : net.links()) {
    if (net.is_interior(l)) d.interior_links.push_back(l);
  }
  d.m1_exterior = net.neighbors(net.m1());
  d.m2_exterior = net.neighbors(net.m2());

  for (NodeId a : d.m1_exterior) d.columns.emplace_back(net.m1(), a);
  for (NodeId b : d.m2_exterior) d.columns.emplace_back(b, net.m2());
  d.columns.insert(d.columns.end(), d.interior_links.begin(),
                   d.interior_links.end());
  return d;
}

// Components of the network after deleting `victims`; deleting monitors
// is allowed.
inline std::vector<std::vector<NodeId>> delete_nodes(
    const Network& net, std::span<const NodeId> victims) {
  return components(net.graph(), victims);
}

}  // namespace tomolink
