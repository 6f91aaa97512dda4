#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tomolink/construction.hpp"
#include "tomolink/simulation.hpp"

using namespace tomolink;

namespace {

std::vector<bool> as_vector(const CertificateVerdicts& v) { return std::vector<bool>(v.begin(), v.end()); }

std::vector<bool> oracle_verdicts(const Network& net, const CyclePairCertificate& c) {
  return oracle::certificate_properties(net, c.v, c.w, c.c1.nodes, c.c2.nodes, c.p1.nodes,
                                        c.p2.nodes, first_monitor(net, c.assignment),
                                        second_monitor(net, c.assignment));
}

Cycle cycle_of(const Network& net, std::initializer_list<const char*> names) {
  std::vector<NodeId> ids;
  for (const char* n : names) ids.push_back(net.id(n));
  return canonical_cycle(ids);
}

// Every qualifying network with 4..6 nodes, computed once.
const std::vector<Network>& qualifying_small_networks() {
  static const std::vector<Network> nets = [] {
    std::vector<Network> out;
    for (std::size_t n = 4; n <= 6; ++n) {
      for_each_small_network(n, [&](const Network& net) {
        if (check_conditions(net).pass()) out.push_back(net);
      });
    }
    return out;
  }();
  return nets;
}

}  // namespace

TEST(Cycle, CanonicalRotationAndDirection) {
  EXPECT_EQ(canonical_cycle({3, 1, 2}).nodes, (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(canonical_cycle({2, 1, 3}).nodes, (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(canonical_cycle({4, 0, 3, 1}).nodes, (std::vector<NodeId>{0, 3, 1, 4}));
  EXPECT_EQ(canonical_cycle({4, 1, 3, 0}).nodes, (std::vector<NodeId>{0, 3, 1, 4}));
}

TEST(IsFace, FixtureExamples) {
  const Network wheel = fix_wheel();
  EXPECT_FALSE(is_face(wheel, cycle_of(wheel, {"m1", "c", "m2", "d"})));
  const Network k4 = fix_k4();
  EXPECT_TRUE(is_face(k4, cycle_of(k4, {"a", "b", "m2"})));
  EXPECT_FALSE(is_face(k4, cycle_of(k4, {"m1", "a", "m2", "b"})));
  const std::vector<NodeId> not_a_cycle{k4.id("m1"), k4.id("m2"), k4.id("a")};
  try {
    is_face(k4, not_a_cycle);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(IsFace, MatchesOracleOnEveryCycle) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 4 + s % 4;
    const std::size_t spare = n * (n - 1) / 2 - 1 - (n - 1);
    const Network net = random_network(n, std::min(spare, 2 + s % 6), s);
    for (const auto& c : oracle::all_cycles(net)) {
      EXPECT_EQ(is_face(net, c), oracle::is_face(net, c)) << serialize(net);
    }
  }
}

TEST(GrowInducedCycle, FixtureExamples) {
  const Network k4 = fix_k4();
  EXPECT_EQ(grow_induced_cycle(k4, k4.link("a", "b")), cycle_of(k4, {"a", "b", "m1"}));

  const Network wheel = fix_wheel();
  const Cycle c = grow_induced_cycle(wheel, wheel.link("c", "h"));
  EXPECT_TRUE(c == cycle_of(wheel, {"c", "h", "m1"}) || c == cycle_of(wheel, {"c", "h", "m2"}));

  const Network path = fix_path();
  try {
    grow_induced_cycle(path, path.link("a", "b"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(GrowInducedCycle, AlwaysChordlessThroughTheLink) {
  for (const Network& net : qualifying_small_networks()) {
    for (const Link& l : interior_decomposition(net).interior_links) {
      const Cycle c = grow_induced_cycle(net, l);
      EXPECT_TRUE(c.has_link(l));
      ASSERT_TRUE(oracle::is_cycle(net, c.nodes));
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 2; j < c.size(); ++j) {
          if (i == 0 && j + 1 == c.size()) continue;
          EXPECT_FALSE(net.adjacent(c.nodes[i], c.nodes[j])) << serialize(net);
        }
      }
    }
  }
}

TEST(RefineToFace, FaceIsReturnedUnchanged) {
  const Network k4 = fix_k4();
  const Cycle tri = cycle_of(k4, {"a", "b", "m2"});
  RefineTrace trace;
  EXPECT_EQ(refine_to_face(k4, tri, k4.link("a", "b"), &trace), tri);
  EXPECT_EQ(trace.monitor_free_sizes, std::vector<std::size_t>{0});
}

// Start from every chordless cycle through every interior link. The result
// is a face through the link, and the monitor-free total strictly drops at
// each reroute until it reaches zero.
TEST(RefineToFace, TerminatesOnAFaceFromEveryChordlessStart) {
  std::size_t reroutes = 0;
  for (const Network& net : qualifying_small_networks()) {
    const auto cycles = oracle::all_cycles(net);
    for (const Link& l : interior_decomposition(net).interior_links) {
      for (const auto& nodes : cycles) {
        const Cycle start = canonical_cycle(nodes);
        if (!start.has_link(l) || !is_chordless(net, start.nodes)) continue;
        RefineTrace trace;
        const Cycle face = refine_to_face(net, start, l, &trace);
        EXPECT_TRUE(oracle::is_face(net, face.nodes)) << serialize(net);
        EXPECT_TRUE(face.has_link(l));
        ASSERT_FALSE(trace.monitor_free_sizes.empty());
        EXPECT_EQ(trace.monitor_free_sizes.back(), 0u);
        for (std::size_t i = 1; i < trace.monitor_free_sizes.size(); ++i) {
          EXPECT_LT(trace.monitor_free_sizes[i], trace.monitor_free_sizes[i - 1]);
        }
        reroutes += trace.monitor_free_sizes.size() - 1;
      }
    }
  }
  EXPECT_GT(reroutes, 0u);
}

TEST(RefineToFace, RejectsCycleWithoutTheLink) {
  const Network k4 = fix_k4();
  try {
    refine_to_face(k4, cycle_of(k4, {"m1", "a", "m2", "b"}), k4.link("a", "b"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(FindCyclePair, FixK4) {
  const Network k4 = fix_k4();
  const auto cert = find_cycle_pair(k4, k4.link("a", "b"));
  EXPECT_EQ(cert.c1, cycle_of(k4, {"a", "b", "m1"}));
  EXPECT_EQ(cert.c2, cycle_of(k4, {"a", "b", "m2"}));
  EXPECT_EQ(cert.assignment, MonitorAssignment::M1First);
  EXPECT_EQ(cert.p1.nodes, std::vector<NodeId>{k4.m1()});
  EXPECT_EQ(cert.p2.nodes, std::vector<NodeId>{k4.m2()});
  EXPECT_TRUE(all_true(verify_certificate(k4, cert)));
  EXPECT_EQ(oracle_verdicts(k4, cert), std::vector<bool>(7, true));

  // The mirror-image certificate is equally valid.
  CyclePairCertificate mirror{cert.v, cert.w, cert.c2, cert.c1,
                              SimplePath{{k4.m2()}}, SimplePath{{k4.m1()}},
                              MonitorAssignment::M2First};
  EXPECT_TRUE(all_true(verify_certificate(k4, mirror)));
}

TEST(FindCyclePair, FixWheel) {
  const Network wheel = fix_wheel();
  for (const char* other : {"c", "d"}) {
    const auto cert = find_cycle_pair(wheel, wheel.link(other, "h"));
    EXPECT_TRUE(all_true(verify_certificate(wheel, cert)));
    EXPECT_EQ(oracle_verdicts(wheel, cert), std::vector<bool>(7, true));
    EXPECT_EQ(cert.p1.length(), 0u);
    EXPECT_EQ(cert.p2.length(), 0u);
  }
}

TEST(VerifyCertificate, ConstructedViolations) {
  const Network k4 = fix_k4();
  const auto good = find_cycle_pair(k4, k4.link("a", "b"));

  auto same = good;
  same.c2 = same.c1;
  const auto v1 = verify_certificate(k4, same);
  EXPECT_FALSE(v1[1]);

  // p1 = m1 -> a, which runs through v.
  auto through_v = good;
  through_v.p1 = SimplePath{{k4.m1(), k4.id("a")}};
  EXPECT_FALSE(verify_certificate(k4, through_v)[6]);

  auto broken = good;
  broken.c2 = Cycle{{k4.id("a"), k4.id("m1"), k4.id("m2")}};
  EXPECT_THROW(verify_certificate(k4, broken), Error);
  try {
    verify_certificate(k4, broken);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedCertificate);
  }
}

// Arbitrary (mostly invalid) certificates assembled from random cycles and
// paths: the library's verdicts must match the oracle property by property.
TEST(VerifyCertificate, MatchesOracleOnRandomCandidates) {
  std::mt19937 rng(17);
  std::size_t compared = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t n = 5 + s % 3;
    const std::size_t spare = n * (n - 1) / 2 - 1 - (n - 1);
    const Network net = random_network(n, std::min(spare, 3 + s % 6), s);
    const auto cycles = oracle::all_cycles(net);
    if (cycles.empty()) continue;
    for (int trial = 0; trial < 60; ++trial) {
      const auto& c1 = cycles[rng() % cycles.size()];
      const NodeId v = c1[0], w = c1[1];
      std::vector<std::vector<NodeId>> through;
      for (const auto& c : cycles) {
        if (Cycle{c}.has_link(Link(v, w))) through.push_back(c);
      }
      const auto& c2 = through[rng() % through.size()];
      auto random_path = [&](NodeId start) {
        std::vector<NodeId> p{start};
        const std::size_t len = rng() % 4;
        for (std::size_t i = 0; i < len; ++i) {
          const auto& nb = net.neighbors(p.back());
          const NodeId next = nb[rng() % nb.size()];
          if (std::find(p.begin(), p.end(), next) != p.end()) break;
          p.push_back(next);
        }
        return p;
      };
      const auto a = rng() % 2 ? MonitorAssignment::M1First : MonitorAssignment::M2First;
      CyclePairCertificate cert{v, w, Cycle{c1}, Cycle{c2},
                                SimplePath{random_path(first_monitor(net, a))},
                                SimplePath{random_path(second_monitor(net, a))}, a};
      EXPECT_EQ(as_vector(verify_certificate(net, cert)), oracle_verdicts(net, cert))
          << serialize(net);
      ++compared;
    }
  }
  EXPECT_GT(compared, 1000u);
}

TEST(ClassifyLink, FixtureExamples) {
  const Network k4 = fix_k4();
  const auto k4_class = classify_link(k4, k4.link("a", "b"));
  EXPECT_EQ(k4_class.verdict, BorderVerdict::NonBorder);
  ASSERT_TRUE(k4_class.certificate.has_value());
  EXPECT_TRUE(all_true(verify_certificate(k4, *k4_class.certificate)));

  const Network wheel = fix_wheel();
  EXPECT_EQ(classify_link(wheel, wheel.link("c", "h")).verdict, BorderVerdict::NonBorder);
  EXPECT_EQ(classify_link(wheel, wheel.link("d", "h")).verdict, BorderVerdict::NonBorder);
}

// The NON_BORDER witness meets the strengthened conditions, and border
// verdicts carry matching evidence.
TEST(ClassifyLink, WitnessesBackTheVerdict) {
  std::size_t border = 0;
  for (const Network& net : qualifying_small_networks()) {
    for (const Link& l : interior_decomposition(net).interior_links) {
      const auto b = classify_link(net, l);
      ASSERT_TRUE(b.certificate.has_value());
      const auto& c = *b.certificate;
      EXPECT_EQ(oracle_verdicts(net, c), std::vector<bool>(7, true));
      std::size_t third = 0, p1_hits = 0;
      for (NodeId x : c.c1.nodes) third += x != l.u && x != l.v && c.c2.contains(x);
      for (NodeId x : c.p1.nodes) p1_hits += x != l.u && x != l.v && c.c2.contains(x);
      switch (b.verdict) {
        case BorderVerdict::NonBorder:
          EXPECT_EQ(third, 0u);
          EXPECT_EQ(p1_hits, 0u);
          break;
        case BorderVerdict::BorderClass1:
          EXPECT_EQ(third, 0u);
          EXPECT_GT(p1_hits, 0u);
          EXPECT_FALSE(b.obstruction.empty());
          ++border;
          break;
        case BorderVerdict::BorderClass2:
          EXPECT_EQ(third, 1u);
          EXPECT_TRUE(b.shared_node.has_value());
          ++border;
          break;
      }
    }
  }
  EXPECT_GT(border, 0u);
}

TEST(ClassifyLink, VerdictIndependentOfSearchOrder) {
  SearchLimits reversed;
  reversed.reverse = true;
  for (const Network& net : qualifying_small_networks()) {
    for (const Link& l : interior_decomposition(net).interior_links) {
      EXPECT_EQ(classify_link(net, l).verdict, classify_link(net, l, reversed).verdict)
          << serialize(net) << net.link_name(l);
    }
  }
}

TEST(Search, CeilingRaisesSearchSpaceTooLarge) {
  const Network wheel = fix_wheel();
  SearchLimits tiny;
  tiny.ceiling = 1;
  try {
    classify_link(wheel, wheel.link("c", "h"), tiny);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SearchSpaceTooLarge);
    EXPECT_EQ(exit_code(e.kind()), 3);
  }
}

TEST(EnumerateFaces, FixtureExamples) {
  const Network k4 = fix_k4();
  const auto faces = enumerate_faces(k4);
  EXPECT_NE(std::find(faces.begin(), faces.end(), cycle_of(k4, {"a", "b", "m1"})), faces.end());
  EXPECT_NE(std::find(faces.begin(), faces.end(), cycle_of(k4, {"a", "b", "m2"})), faces.end());
  EXPECT_EQ(std::find(faces.begin(), faces.end(), cycle_of(k4, {"m1", "a", "m2", "b"})),
            faces.end());
  EXPECT_TRUE(enumerate_faces(fix_path()).empty());
}

TEST(EnumerateFaces, MatchesOracleFilter) {
  for (std::uint64_t s = 0; s < 80; ++s) {
    const std::size_t n = 4 + s % 4;
    const std::size_t spare = n * (n - 1) / 2 - 1 - (n - 1);
    const Network net = random_network(n, std::min(spare, 1 + s % 7), 300 + s);
    std::set<std::vector<NodeId>> expected;
    for (const auto& c : oracle::all_cycles(net)) {
      if (oracle::is_face(net, c)) expected.insert(c);
    }
    std::set<std::vector<NodeId>> got;
    for (const Cycle& c : enumerate_faces(net)) got.insert(c.nodes);
    EXPECT_EQ(got, expected) << serialize(net);
  }
}

TEST(CheckProp4a, FixturesHaveNoBorderLinks) {
  for (const Network& net : {fix_k4(), fix_wheel()}) {
    for (const auto& f : check_prop4a(net)) {
      EXPECT_EQ(f.border_links, 0u);
      EXPECT_LE(f.border_links, f.interior_links);
    }
  }
}

TEST(FindMonitorFace, RejectsNonBorderLink) {
  const Network k4 = fix_k4();
  try {
    find_monitor_face(k4, k4.link("a", "b"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(FindDisjointMonitorPaths, WheelFacesAllUseAMonitor) {
  const Network wheel = fix_wheel();
  const Link ch = wheel.link("c", "h");
  for (const Cycle& face : enumerate_faces(wheel)) {
    if (!face.has_link(ch)) continue;
    try {
      find_disjoint_monitor_paths(wheel, face, ch.u, ch.v);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
    }
  }
}

// Border links from the exhaustive population: a monitor-free face exists
// and the monitor paths to its endpoints are disjoint and enter the face
// only at their last node.
TEST(FindDisjointMonitorPaths, BorderLinksOfSmallNetworks) {
  std::size_t checked = 0;
  for (const Network& net : qualifying_small_networks()) {
    for (const Link& l : interior_decomposition(net).interior_links) {
      if (!classify_link(net, l).is_border()) continue;
      const Cycle face = find_monitor_face(net, l);
      EXPECT_FALSE(face.contains(net.m1()) || face.contains(net.m2()));
      EXPECT_TRUE(oracle::is_face(net, face.nodes));
      EXPECT_TRUE(face.has_link(l));
      const auto paths = find_disjoint_monitor_paths(net, face, l.u, l.v);
      const auto& p1 = paths.from_m1.nodes;
      const auto& p2 = paths.from_m2.nodes;
      EXPECT_TRUE(oracle::is_path(net, p1));
      EXPECT_TRUE(oracle::is_path(net, p2));
      EXPECT_EQ(p1.front(), net.m1());
      EXPECT_EQ(p2.front(), net.m2());
      EXPECT_EQ(p1.back(), paths.swapped ? l.v : l.u);
      EXPECT_EQ(p2.back(), paths.swapped ? l.u : l.v);
      for (NodeId x : p1) EXPECT_EQ(std::count(p2.begin(), p2.end(), x), 0);
      for (std::size_t i = 0; i + 1 < p1.size(); ++i) EXPECT_FALSE(face.contains(p1[i]));
      for (std::size_t i = 0; i + 1 < p2.size(); ++i) EXPECT_FALSE(face.contains(p2[i]));
      ++checked;
    }
  }
  EXPECT_GT(checked, 0u);
}
