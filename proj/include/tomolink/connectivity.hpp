#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tomolink/error.hpp"
#include "tomolink/network.hpp"

namespace tomolink {

// Links whose removal disconnects their component (Tarjan low-link).
inline std::vector<Link> bridges(const Graph& graph) {
  const std::size_t n = graph.order();
  std::vector<std::size_t> order(n, 0), low(n, 0);
  std::vector<Link> out;
  std::size_t clock = 0;

  std::function<void(NodeId, NodeId)> visit = [&](NodeId x, NodeId parent) {
    order[x] = low[x] = ++clock;
    for (NodeId y : graph.neighbors(x)) {
      if (y == parent) continue;  // simple graph: one link per pair
      if (order[y] == 0) {
        visit(y, x);
        low[x] = std::min(low[x], low[y]);
        if (low[y] > order[x]) out.emplace_back(x, y);
      } else {
        low[x] = std::min(low[x], order[y]);
      }
    }
  };
  for (NodeId x = 0; x < n; ++x) {
    if (order[x] == 0) visit(x, n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Link> bridges(const Network& net) {
  return bridges(net.graph());
}

// Articulation points.
inline std::vector<NodeId> cutvertices(const Graph& graph) {
  const std::size_t n = graph.order();
  std::vector<std::size_t> order(n, 0), low(n, 0);
  std::vector<char> cut(n, 0);
  std::size_t clock = 0;

  std::function<void(NodeId, NodeId)> visit = [&](NodeId x, NodeId parent) {
    order[x] = low[x] = ++clock;
    std::size_t children = 0;
    for (NodeId y : graph.neighbors(x)) {
      if (y == parent) continue;
      if (order[y] == 0) {
        ++children;
        visit(y, x);
        low[x] = std::min(low[x], low[y]);
        if (parent != n && low[y] >= order[x]) cut[x] = 1;
      } else {
        low[x] = std::min(low[x], order[y]);
      }
    }
    if (parent == n && children > 1) cut[x] = 1;
  };
  for (NodeId x = 0; x < n; ++x) {
    if (order[x] == 0) visit(x, n);
  }

  std::vector<NodeId> out;
  for (NodeId x = 0; x < n; ++x) {
    if (cut[x]) out.push_back(x);
  }
  return out;
}

inline std::vector<NodeId> cutvertices(const Network& net) {
  return cutvertices(net.graph());
}

// Connected and bridge-free. A single node counts as 2-edge-connected.
inline bool is_two_edge_connected(const Graph& graph) {
  if (graph.order() <= 1) return true;
  return is_connected(graph) && bridges(graph).empty();
}

enum class ConditionMethod { Characterization, BruteForce };

struct ConditionOneReport {
  bool pass = true;
  std::vector<Link> failures;  // interior links l with G - l not 2-edge-connected
};

struct ConditionTwoReport {
  bool pass = true;
  std::optional<std::pair<NodeId, NodeId>> witness;  // first violating pair
};

struct ConditionReport {
  ConditionOneReport condition_one;
  ConditionTwoReport condition_two;
  ConditionMethod method = ConditionMethod::Characterization;

  bool pass() const { return condition_one.pass && condition_two.pass; }
};

// G - l is 2-edge-connected for each interior link l.
inline ConditionOneReport condition_one(const Network& net) {
  ConditionOneReport report;
  for (const Link& l : net.links()) {
    if (!net.is_interior(l)) continue;
    Graph reduced = net.graph();
    reduced.remove_link(l.u, l.v);
    if (!is_two_edge_connected(reduced)) {
      report.pass = false;
      report.failures.push_back(l);
    }
  }
  return report;
}

// Visits 2-node subsets {i, j}, i < j, ordered by j then i; stops at the
// first subset for which `fn` returns true and reports it.
template <typename Fn>
std::optional<std::pair<NodeId, NodeId>> first_pair(std::size_t n, Fn&& fn) {
  for (NodeId j = 1; j < n; ++j) {
    for (NodeId i = 0; i < j; ++i) {
      if (fn(i, j)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

// Pair-deletion form of "G + m1m2 is 3-vertex-connected": deleting any two
// nodes leaves G connected, or every remaining component holds a monitor
// that was not deleted.
inline ConditionTwoReport condition_two_characterization(const Network& net) {
  ConditionTwoReport report;
  report.witness = first_pair(net.size(), [&](NodeId i, NodeId j) {
    const NodeId victims[] = {i, j};
    const auto parts = components(net.graph(), victims);
    if (parts.size() <= 1) return false;
    for (const auto& part : parts) {
      const bool has_monitor =
          std::any_of(part.begin(), part.end(),
                      [&](NodeId x) { return net.is_monitor(x); });
      if (!has_monitor) return true;
    }
    return false;
  });
  report.pass = !report.witness.has_value();
  return report;
}

inline Graph with_monitor_link(const Network& net) {
  Graph g = net.graph();
  g.add_link(net.m1(), net.m2());
  return g;
}

// Oracle: the graph (optionally plus m1m2) survives deletion of every node
// subset of size <= 2.
inline bool is_three_vertex_connected_bruteforce(const Network& net,
                                                 bool add_monitor_link) {
  if (net.size() < 4) {
    throw Error(ErrorKind::TooSmall,
                "3-vertex-connectivity needs at least 4 nodes");
  }
  const Graph g = add_monitor_link ? with_monitor_link(net) : net.graph();
  if (!is_connected(g)) return false;
  for (NodeId i = 0; i < g.order(); ++i) {
    const NodeId single[] = {i};
    if (!is_connected(g, single)) return false;
  }
  return !first_pair(g.order(), [&](NodeId i, NodeId j) {
    const NodeId victims[] = {i, j};
    return !is_connected(g, victims);
  });
}

inline ConditionReport check_conditions(
    const Network& net,
    ConditionMethod method = ConditionMethod::Characterization) {
  ConditionReport report;
  report.method = method;
  if (method == ConditionMethod::Characterization) {
    report.condition_one = condition_one(net);
    report.condition_two = condition_two_characterization(net);
    return report;
  }

  // Brute force: single-link deletions for bridges, pair deletions on
  // G + m1m2 for the vertex condition.
  for (const Link& l : net.links()) {
    if (!net.is_interior(l)) continue;
    Graph reduced = net.graph();
    reduced.remove_link(l.u, l.v);
    bool ok = is_connected(reduced);
    for (const Link& e : reduced.links()) {
      if (!ok) break;
      Graph twice = reduced;
      twice.remove_link(e.u, e.v);
      ok = is_connected(twice);
    }
    if (!ok) {
      report.condition_one.pass = false;
      report.condition_one.failures.push_back(l);
    }
  }
  const Graph augmented = with_monitor_link(net);
  report.condition_two.witness =
      first_pair(augmented.order(), [&](NodeId i, NodeId j) {
        const NodeId victims[] = {i, j};
        return !is_connected(augmented, victims);
      });
  report.condition_two.pass = !report.condition_two.witness.has_value();
  return report;
}

}  // namespace tomolink
