#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tomolink/connectivity.hpp"
#include "tomolink/simulation.hpp"

using namespace tomolink;

namespace {

std::vector<std::string> link_names(const Network& net, const std::vector<Link>& links) {
  std::vector<std::string> out;
  for (const Link& l : links) out.push_back(net.link_name(l));
  return out;
}

std::vector<Network> random_suite(std::size_t count, std::size_t max_nodes,
                                  std::uint64_t salt) {
  std::vector<Network> out;
  for (std::uint64_t s = 0; s < count; ++s) {
    const std::size_t n = 4 + s % (max_nodes - 3);
    const std::size_t spare = n * (n - 1) / 2 - 1 - (n - 1);
    out.push_back(random_network(n, std::min(spare, s % (2 * n)), salt + s));
  }
  return out;
}

}  // namespace

TEST(Bridges, FixtureExamples) {
  const Network path = fix_path();
  EXPECT_EQ(link_names(path, bridges(path)),
            (std::vector<std::string>{"a-b", "a-m1", "b-m2"}));
  EXPECT_TRUE(bridges(fix_k4()).empty());

  const Network chain = parse_network(
      R"({"nodes":["m1","m2","x"],"links":[["m1","x"],["x","m2"]],"monitors":["m1","m2"]})");
  EXPECT_EQ(bridges(chain).size(), 2u);
}

TEST(Cutvertices, FixtureExamples) {
  const Network path = fix_path();
  EXPECT_EQ(names_of(path, cutvertices(path)), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(cutvertices(fix_k4()).empty());

  const Network star = parse_network(R"({"nodes":["c","x","y","z"],
    "links":[["c","x"],["c","y"],["c","z"]],"monitors":["x","y"]})");
  EXPECT_EQ(names_of(star, cutvertices(star)), std::vector<std::string>{"c"});
}

TEST(Bridges, AgreeWithSingleDeletionOracle) {
  for (const Network& net : random_suite(150, 9, 7000)) {
    EXPECT_EQ(bridges(net), oracle::bridges(net)) << serialize(net);
    EXPECT_EQ(cutvertices(net), oracle::cutvertices(net)) << serialize(net);
  }
}

TEST(TwoEdgeConnected, Examples) {
  Graph k4_minus = fix_k4().graph();
  const Network k4 = fix_k4();
  k4_minus.remove_link(k4.id("a"), k4.id("b"));
  EXPECT_TRUE(is_two_edge_connected(k4_minus));

  const Network path = fix_path();
  Graph path_minus = path.graph();
  path_minus.remove_link(path.id("a"), path.id("b"));
  EXPECT_FALSE(is_two_edge_connected(path_minus));

  EXPECT_TRUE(is_two_edge_connected(Graph(1)));
  EXPECT_FALSE(is_two_edge_connected(Graph(2)));
}

TEST(ConditionOne, FixtureExamples) {
  EXPECT_TRUE(condition_one(fix_k4()).pass);
  const Network path = fix_path();
  const auto report = condition_one(path);
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(link_names(path, report.failures), std::vector<std::string>{"a-b"});
  EXPECT_TRUE(condition_one(fix_wheel()).pass);
}

TEST(ConditionTwo, FixtureExamples) {
  EXPECT_TRUE(condition_two_characterization(fix_k4()).pass);
  EXPECT_TRUE(condition_two_characterization(fix_wheel()).pass);

  const Network path = fix_path();
  const auto report = condition_two_characterization(path);
  EXPECT_FALSE(report.pass);
  ASSERT_TRUE(report.witness.has_value());
  std::vector<std::string> witness{path.name(report.witness->first),
                                   path.name(report.witness->second)};
  std::sort(witness.begin(), witness.end());
  EXPECT_EQ(witness, (std::vector<std::string>{"b", "m1"}));
}

TEST(ConditionTwo, WitnessActuallyViolatesTheClause) {
  for (const Network& net : random_suite(200, 9, 9100)) {
    const auto report = condition_two_characterization(net);
    EXPECT_EQ(report.pass, !report.witness.has_value());
    if (!report.witness) continue;
    const NodeId victims[] = {report.witness->first, report.witness->second};
    bool monitorless = false;
    for (const auto& part : delete_nodes(net, victims)) {
      monitorless = monitorless ||
                    std::none_of(part.begin(), part.end(),
                                 [&](NodeId x) { return net.is_monitor(x); });
    }
    EXPECT_TRUE(monitorless);
  }
}

TEST(ThreeVertexConnected, FixtureExamples) {
  EXPECT_TRUE(is_three_vertex_connected_bruteforce(fix_k4(), true));
  EXPECT_FALSE(is_three_vertex_connected_bruteforce(fix_path(), true));
  EXPECT_FALSE(is_three_vertex_connected_bruteforce(fix_k4(), false));
  const Network tiny = parse_network(
      R"({"nodes":["m1","m2","x"],"links":[["m1","x"],["x","m2"]],"monitors":["m1","m2"]})");
  try {
    is_three_vertex_connected_bruteforce(tiny, true);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooSmall);
  }
}

// Pair-deletion characterization versus direct 3-connectivity, checked
// against the test-side oracle as well as the library's brute force.
TEST(ConditionTwo, CharacterizationMatchesBruteForce) {
  for (const Network& net : random_suite(300, 10, 12000)) {
    const bool fast = condition_two_characterization(net).pass;
    EXPECT_EQ(fast, is_three_vertex_connected_bruteforce(net, true)) << serialize(net);
    EXPECT_EQ(fast, oracle::three_connected_with_monitor_link(net)) << serialize(net);
  }
}

TEST(CheckConditions, MethodsAgreeAndMatchOracle) {
  for (const Network& net : random_suite(200, 9, 500)) {
    const auto a = check_conditions(net, ConditionMethod::Characterization);
    const auto b = check_conditions(net, ConditionMethod::BruteForce);
    EXPECT_EQ(a.condition_one.pass, b.condition_one.pass);
    EXPECT_EQ(a.condition_one.failures, b.condition_one.failures);
    EXPECT_EQ(a.condition_two.pass, b.condition_two.pass);
    EXPECT_EQ(a.condition_one.pass, oracle::condition_one(net)) << serialize(net);
    EXPECT_EQ(b.method, ConditionMethod::BruteForce);
  }
}

// Every link touches a non-monitor node (no m1m2 link), so with at least
// one interior link, condition one leaves no bridge anywhere.
TEST(ConditionOne, PassImpliesNoInteriorIncidentBridges) {
  std::size_t checked = 0;
  for (const Network& net : random_suite(400, 9, 31337)) {
    if (!condition_one(net).pass) continue;
    if (interior_decomposition(net).kh() == 0) continue;
    ++checked;
    EXPECT_TRUE(bridges(net).empty()) << serialize(net);
  }
  EXPECT_GT(checked, 20u);
}
