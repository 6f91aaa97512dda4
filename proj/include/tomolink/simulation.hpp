#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tomolink/connectivity.hpp"
#include "tomolink/error.hpp"
#include "tomolink/measurement.hpp"
#include "tomolink/network.hpp"
#include "tomolink/rational.hpp"

namespace tomolink {

using LinkWeights = std::map<Link, Rational>;

namespace detail {

// Uniform draw in [0, bound) by rejection. std::uniform_int_distribution
// is implementation-defined, which would make seeded output differ
// between standard libraries; mt19937_64 itself is fully specified.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = rng.max() - (rng.max() % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[draw(rng, i)]);
  }
}

// "n0".."n9", or zero-padded to a common width so that lexicographic and
// numeric order agree.
inline std::vector<std::string> node_names(std::size_t n) {
  const std::size_t width = std::to_string(n - 1).size();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    out.push_back("n" + std::string(width - digits.size(), '0') + digits);
  }
  return out;
}

}  // namespace detail

// Random spanning tree plus `extra_links` random further links, never
// joining the monitors, which are the two lexicographically first nodes.
inline Network random_network(std::size_t n, std::size_t extra_links,
                              std::uint64_t seed) {
  if (n < 4) {
    throw Error(ErrorKind::Infeasible, "random networks need at least 4 nodes");
  }
  std::mt19937_64 rng(seed);
  const auto names = detail::node_names(n);
  const Link forbidden(0, 1);

  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  detail::shuffle(order, rng);
  if (Link(order[0], order[1]) == forbidden) std::swap(order[1], order[2]);

  Graph g(n);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<NodeId> parents;
    for (std::size_t j = 0; j < k; ++j) {
      if (Link(order[j], order[k]) != forbidden) parents.push_back(order[j]);
    }
    g.add_link(order[k], parents[detail::draw(rng, parents.size())]);
  }

  std::vector<Link> spare;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (Link(a, b) != forbidden && !g.adjacent(a, b)) spare.emplace_back(a, b);
    }
  }
  if (extra_links > spare.size()) {
    throw Error(ErrorKind::Infeasible,
                "only " + std::to_string(spare.size()) +
                    " links can be added to a " + std::to_string(n) +
                    "-node tree");
  }
  detail::shuffle(spare, rng);
  for (std::size_t k = 0; k < extra_links; ++k) g.add_link(spare[k].u, spare[k].v);

  std::vector<std::pair<std::string, std::string>> links;
  for (const Link& l : g.links()) links.emplace_back(names[l.u], names[l.v]);
  return Network::create(names, links, names[0], names[1]);
}

// Deterministic positive weights p/q with 1 <= p <= 20, 1 <= q <= 6.
inline LinkWeights assign_weights(const Network& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LinkWeights out;
  for (const Link& l : net.links()) {
    const auto num = 1 + detail::draw(rng, 20);
    const auto den = 1 + detail::draw(rng, 6);
    Rational w(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    w.canonicalize();
    out.emplace(l, w);
  }
  return out;
}

inline std::vector<Rational> measure_paths(const LinkWeights& weights,
                                           const std::vector<SimplePath>& paths) {
  std::vector<Rational> out;
  out.reserve(paths.size());
  for (const SimplePath& p : paths) {
    Rational sum = 0;
    for (const Link& l : p.links()) {
      const auto it = weights.find(l);
      if (it == weights.end()) {
        throw Error(ErrorKind::MissingWeight, "a path link has no weight");
      }
      sum += it->second;
    }
    out.push_back(sum);
  }
  return out;
}

// FNV-1a over the canonical graph document, as 16 hex digits.
inline std::string network_digest(const Network& net) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize(net)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
  return out;
}

struct RoundTripLink {
  Link link;
  Rational assigned;
  bool identifiable = false;
  std::optional<Rational> recovered;
};

struct RoundTripReport {
  std::string digest;
  ConditionReport conditions;
  std::size_t path_count = 0;
  std::size_t rank = 0;
  std::vector<RoundTripLink> links;  // matrix column order
  bool exact_match = false;
};

// weights -> path sums -> exact recovery, compared link by link.
inline RoundTripReport round_trip(const Network& net, std::uint64_t seed,
                                  std::size_t cap = kDefaultPathCap) {
  RoundTripReport report;
  report.digest = network_digest(net);
  const auto weights = assign_weights(net, seed);
  const auto m = build_measurement_matrix(net, cap);
  const auto measured = measure_paths(weights, m.paths);
  const auto identified = identify(net, m);
  const auto recovered = recover_metrics(m, measured);

  report.conditions = identified.conditions;
  report.path_count = m.paths.size();
  report.rank = identified.rank;
  report.exact_match = true;
  for (std::size_t c = 0; c < m.columns().size(); ++c) {
    RoundTripLink entry{m.columns()[c], weights.at(m.columns()[c]),
                        identified.identifiable[c], std::nullopt};
    if (auto it = recovered.find(entry.link); it != recovered.end()) {
      entry.recovered = it->second;
    }
    if (entry.identifiable &&
        (!entry.recovered || *entry.recovered != entry.assigned)) {
      report.exact_match = false;
    }
    if (entry.recovered.has_value() != entry.identifiable) {
      report.exact_match = false;
    }
    report.links.push_back(std::move(entry));
  }
  return report;
}

// Calls fn(net) for every connected simple network on nodes n0..n{n-1}
// with monitors n0, n1 and no monitor-to-monitor link.
template <typename Fn>
void for_each_small_network(std::size_t n, Fn&& fn) {
  const auto names = detail::node_names(n);
  std::vector<Link> candidates;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (Link(a, b) != Link(0, 1)) candidates.emplace_back(a, b);
    }
  }
  const std::uint64_t total = std::uint64_t{1} << candidates.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Graph g(n);
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (mask >> k & 1) g.add_link(candidates[k].u, candidates[k].v);
    }
    if (!is_connected(g)) continue;
    std::vector<std::pair<std::string, std::string>> links;
    for (const Link& l : g.links()) links.emplace_back(names[l.u], names[l.v]);
    fn(Network::create(names, links, names[0], names[1]));
  }
}

}  // namespace tomolink
