#pragma once

#include <nlohmann/json.hpp>

#include "tomolink/construction.hpp"
#include "tomolink/simulation.hpp"

// Exhaustive border-link scan over every qualifying network with at most
// `max_nodes` nodes. The result is stored as tests/assets/border_scan_n6.json
// and recomputed by the acceptance suite.
inline nlohmann::json border_scan(std::size_t max_nodes) {
  using namespace tomolink;
  nlohmann::json sizes = nlohmann::json::array();
  nlohmann::json instances = nlohmann::json::array();
  for (std::size_t n = 4; n <= max_nodes; ++n) {
    std::size_t networks = 0, qualifying = 0, links = 0, class1 = 0, class2 = 0;
    for_each_small_network(n, [&](const Network& net) {
      ++networks;
      if (!check_conditions(net).pass()) return;
      ++qualifying;
      nlohmann::json border = nlohmann::json::array();
      for (const Link& l : interior_decomposition(net).interior_links) {
        ++links;
        const auto verdict = classify_link(net, l).verdict;
        if (verdict == BorderVerdict::NonBorder) continue;
        (verdict == BorderVerdict::BorderClass1 ? class1 : class2)++;
        border.push_back({{"link", net.link_name(l)}, {"verdict", to_string(verdict)}});
      }
      if (!border.empty()) {
        instances.push_back({{"network", to_json(net)}, {"border_links", border}});
      }
    });
    sizes.push_back({{"nodes", n},
                     {"networks", networks},
                     {"qualifying", qualifying},
                     {"interior_links", links},
                     {"border_class_1", class1},
                     {"border_class_2", class2}});
  }
  return {{"schema", "tomolink.border-scan/1"},
          {"max_nodes", max_nodes},
          {"summary", sizes},
          {"instances", instances}};
}
