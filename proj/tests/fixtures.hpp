#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "tomolink/network.hpp"

inline std::string asset_text(const std::string& name) {
  std::ifstream in(std::string(TOMOLINK_ASSETS) + "/" + name);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline tomolink::Network load_fixture(const std::string& name) {
  return tomolink::parse_network(asset_text(name));
}

inline tomolink::Network fix_k4() { return load_fixture("fix_k4.json"); }
inline tomolink::Network fix_path() { return load_fixture("fix_path.json"); }
inline tomolink::Network fix_wheel() { return load_fixture("fix_wheel.json"); }

// Node names of a path/cycle, for readable assertions.
template <typename Seq>
std::vector<std::string> names_of(const tomolink::Network& net, const Seq& ids) {
  std::vector<std::string> out;
  for (auto x : ids) out.push_back(net.name(x));
  return out;
}
