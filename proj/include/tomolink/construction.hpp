#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tomolink/connectivity.hpp"
#include "tomolink/error.hpp"
#include "tomolink/network.hpp"

namespace tomolink {

inline constexpr std::size_t kDefaultCeiling = 200000;

struct SearchLimits {
  std::size_t ceiling = kDefaultCeiling;  // max cycles / candidate paths
  bool reverse = false;                   // walk candidates in reverse order
};

// A cycle stored in canonical rotation: smallest node first, then the
// direction whose second node is smaller than the last.
struct Cycle {
  std::vector<NodeId> nodes;

  std::size_t size() const { return nodes.size(); }

  bool contains(NodeId x) const {
    return std::find(nodes.begin(), nodes.end(), x) != nodes.end();
  }

  std::vector<Link> links() const {
    std::vector<Link> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out.emplace_back(nodes[i], nodes[(i + 1) % nodes.size()]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_link(Link l) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (Link(nodes[i], nodes[(i + 1) % nodes.size()]) == l) return true;
    }
    return false;
  }

  bool operator==(const Cycle&) const = default;
};

inline Cycle canonical_cycle(std::vector<NodeId> seq) {
  if (seq.size() < 3) return Cycle{std::move(seq)};
  const auto smallest = std::min_element(seq.begin(), seq.end());
  std::rotate(seq.begin(), smallest, seq.end());
  if (seq[1] > seq.back()) std::reverse(seq.begin() + 1, seq.end());
  return Cycle{std::move(seq)};
}

// Shorter cycles first, then lexicographic.
inline bool cycle_less(const Cycle& a, const Cycle& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.nodes < b.nodes;
}

inline bool is_cycle(const Network& net, std::span<const NodeId> seq) {
  if (seq.size() < 3) return false;
  std::vector<NodeId> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= net.size() ||
      std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!net.adjacent(seq[i], seq[(i + 1) % seq.size()])) return false;
  }
  return true;
}

// No link joins two non-consecutive cycle nodes.
inline bool is_chordless(const Network& net, std::span<const NodeId> seq) {
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (net.adjacent(seq[i], seq[j])) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<NodeId>> monitor_free_components(
    const Network& net, std::span<const NodeId> removed) {
  std::vector<std::vector<NodeId>> out;
  for (auto& part : components(net.graph(), removed)) {
    if (std::none_of(part.begin(), part.end(),
                     [&](NodeId x) { return net.is_monitor(x); })) {
      out.push_back(std::move(part));
    }
  }
  return out;
}

inline std::size_t monitor_free_size(const Network& net,
                                     std::span<const NodeId> removed) {
  std::size_t total = 0;
  for (const auto& part : monitor_free_components(net, removed)) {
    total += part.size();
  }
  return total;
}

// Chordless, and every component of G - V(cycle) holds a monitor.
inline bool is_face(const Network& net, std::span<const NodeId> cycle) {
  if (!is_cycle(net, cycle)) {
    throw Error(ErrorKind::PreconditionFailed, "not a cycle of the network");
  }
  return is_chordless(net, cycle) && monitor_free_components(net, cycle).empty();
}

inline bool is_face(const Network& net, const Cycle& cycle) {
  return is_face(net, std::span<const NodeId>(cycle.nodes));
}

// ---------------------------------------------------------------------------

namespace detail {

inline void require_conditions(const Network& net) {
  const auto report = check_conditions(net);
  if (!report.condition_one.pass) {
    throw Error(ErrorKind::PreconditionFailed,
                "G - l is not 2-edge-connected for some interior link");
  }
  if (!report.condition_two.pass) {
    throw Error(ErrorKind::PreconditionFailed,
                "G + m1m2 is not 3-vertex-connected");
  }
}

inline void require_interior(const Network& net, Link vw) {
  if (vw.u >= net.size() || vw.v >= net.size() || !net.adjacent(vw.u, vw.v)) {
    throw Error(ErrorKind::PreconditionFailed, "not a link of the network");
  }
  if (!net.is_interior(vw)) {
    throw Error(ErrorKind::PreconditionFailed,
                "link " + net.link_name(vw) + " is not interior");
  }
}

// Cycle nodes listed from v to w, so that the closing link is wv.
inline std::vector<NodeId> open_at(const Cycle& cycle, NodeId v, NodeId w) {
  const auto& c = cycle.nodes;
  const std::size_t n = c.size();
  const std::size_t at =
      static_cast<std::size_t>(std::find(c.begin(), c.end(), v) - c.begin());
  const bool forward_hits_w = c[(at + 1) % n] == w;
  std::vector<NodeId> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(forward_hits_w ? c[(at + n - k) % n] : c[(at + k) % n]);
  }
  return out;
}

// Replaces the arc under the first chord (in position order) by the chord
// until the cycle path + wv is induced. The closing link wv is never cut.
inline void shortcut_chords(const Network& net, std::vector<NodeId>& path) {
  for (bool changed = true; changed;) {
    changed = false;
    const std::size_t n = path.size();
    for (std::size_t i = 0; i < n && !changed; ++i) {
      for (std::size_t j = i + 2; j < n && !changed; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (net.adjacent(path[i], path[j])) {
          path.erase(path.begin() + static_cast<std::ptrdiff_t>(i + 1),
                     path.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }
}

// Every v -> w path of length >= 2 avoiding the link vw, as a cycle.
// With `induced`, only chordless cycles are produced.
inline std::vector<Cycle> cycles_through(const Network& net, Link vw,
                                         bool induced,
                                         const SearchLimits& limits) {
  const NodeId v = vw.u, w = vw.v;
  std::vector<Cycle> out;
  std::vector<char> on_path(net.size(), 0);
  std::vector<NodeId> path{v};
  on_path[v] = 1;

  auto record = [&](std::vector<NodeId> seq) {
    if (out.size() == limits.ceiling) {
      throw Error(ErrorKind::SearchSpaceTooLarge,
                  "more than " + std::to_string(limits.ceiling) +
                      " cycles through " + net.link_name(vw));
    }
    out.push_back(canonical_cycle(std::move(seq)));
  };

  std::function<void()> extend = [&]() {
    const NodeId last = path.back();
    for (NodeId x : net.neighbors(last)) {
      if (on_path[x]) continue;
      if (x == w) {
        if (path.size() >= 2) {
          auto seq = path;
          seq.push_back(w);
          record(std::move(seq));
        }
        continue;
      }
      if (induced) {
        // x may only touch the last path node, plus w when closing next.
        bool chord = false;
        for (std::size_t i = 0; i + 1 < path.size() && !chord; ++i) {
          chord = net.adjacent(x, path[i]);
        }
        if (chord) continue;
        if (net.adjacent(x, w)) {
          auto seq = path;
          seq.push_back(x);
          seq.push_back(w);
          record(std::move(seq));
          continue;
        }
      }
      on_path[x] = 1;
      path.push_back(x);
      extend();
      path.pop_back();
      on_path[x] = 0;
    }
  };
  extend();

  std::sort(out.begin(), out.end(), cycle_less);
  if (limits.reverse) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Chordless cycle through vw: seed with the first v -> w path (depth-first,
// sorted neighbours) in G - vw, then cut chords until none remain.
inline Cycle grow_induced_cycle(const Network& net, Link vw) {
  detail::require_interior(net, vw);
  detail::require_conditions(net);
  const NodeId v = vw.u, w = vw.v;

  std::vector<NodeId> path;
  std::vector<char> seen(net.size(), 0);
  std::function<bool(NodeId)> dfs = [&](NodeId x) {
    seen[x] = 1;
    path.push_back(x);
    if (x == w) return true;
    for (NodeId y : net.neighbors(x)) {
      if (x == v && y == w) continue;
      if (!seen[y] && dfs(y)) return true;
    }
    path.pop_back();
    return false;
  };
  if (!dfs(v)) {
    throw Error(ErrorKind::PreconditionFailed,
                "no cycle through " + net.link_name(vw));
  }
  detail::shortcut_chords(net, path);
  return canonical_cycle(std::move(path));
}

struct RefineTrace {
  // Total size of monitor-free components before each reroute, followed by
  // the final value (0).
  std::vector<std::size_t> monitor_free_sizes;
};

// Reroutes a chordless cycle through vw into a face: while some component
// of G - V(C) has no monitor, replace an arc of C (away from vw) by an
// inner path through such a component, cut chords again, and keep the
// first candidate that strictly shrinks the monitor-free total.
inline Cycle refine_to_face(const Network& net, const Cycle& cycle, Link vw,
                            RefineTrace* trace = nullptr,
                            const SearchLimits& limits = {}) {
  detail::require_interior(net, vw);
  if (!is_cycle(net, cycle.nodes) || !is_chordless(net, cycle.nodes) ||
      !cycle.has_link(vw)) {
    throw Error(ErrorKind::PreconditionFailed,
                "refinement needs a chordless cycle through " +
                    net.link_name(vw));
  }
  detail::require_conditions(net);

  std::vector<NodeId> path = detail::open_at(cycle, vw.u, vw.v);
  std::size_t budget = limits.ceiling;

  for (;;) {
    const auto free_parts = monitor_free_components(net, path);
    std::size_t current = 0;
    for (const auto& part : free_parts) current += part.size();
    if (trace) trace->monitor_free_sizes.push_back(current);
    if (current == 0) return canonical_cycle(path);

    std::optional<std::vector<NodeId>> accepted;
    for (const auto& part : free_parts) {
      std::vector<char> in_part(net.size(), 0);
      for (NodeId x : part) in_part[x] = 1;

      std::vector<std::size_t> attachments;
      for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& nb = net.neighbors(path[i]);
        if (std::any_of(nb.begin(), nb.end(),
                        [&](NodeId y) { return in_part[y]; })) {
          attachments.push_back(i);
        }
      }

      for (std::size_t ai = 0; ai < attachments.size() && !accepted; ++ai) {
        for (std::size_t bi = ai + 1; bi < attachments.size() && !accepted;
             ++bi) {
          const std::size_t a = attachments[ai], b = attachments[bi];
          const NodeId target = path[b];

          // Inner paths path[a] -> (nodes of part) -> path[b].
          std::vector<NodeId> inner;
          std::vector<char> used(net.size(), 0);
          std::function<bool(NodeId)> walk = [&](NodeId x) {
            for (NodeId y : net.neighbors(x)) {
              if (y == target && !inner.empty()) {
                if (budget-- == 0) {
                  throw Error(ErrorKind::SearchSpaceTooLarge,
                              "face refinement exceeded the search ceiling");
                }
                std::vector<NodeId> candidate(path.begin(),
                                              path.begin() + a + 1);
                candidate.insert(candidate.end(), inner.begin(), inner.end());
                candidate.insert(candidate.end(), path.begin() + b, path.end());
                detail::shortcut_chords(net, candidate);
                if (monitor_free_size(net, candidate) < current) {
                  accepted = std::move(candidate);
                  return true;
                }
                continue;
              }
              if (!in_part[y] || used[y]) continue;
              used[y] = 1;
              inner.push_back(y);
              if (walk(y)) return true;
              inner.pop_back();
              used[y] = 0;
            }
            return false;
          };
          walk(path[a]);
        }
      }
      if (accepted) break;
    }

    if (!accepted) {
      throw Error(ErrorKind::SearchExhausted,
                  "no reroute shrinks the monitor-free components of a cycle "
                  "through " + net.link_name(vw));
    }
    path = std::move(*accepted);
  }
}

// ---------------------------------------------------------------------------
// Cycle-pair certificates.

enum class MonitorAssignment { M1First, M2First };

struct CyclePairCertificate {
  NodeId v = 0;
  NodeId w = 0;
  Cycle c1;  // the face
  Cycle c2;
  SimplePath p1;  // from m*1 to c1 - v - w
  SimplePath p2;  // from m*2 to c2 - v - w
  MonitorAssignment assignment = MonitorAssignment::M1First;

  Link link() const { return Link(v, w); }
};

inline NodeId first_monitor(const Network& net, MonitorAssignment a) {
  return a == MonitorAssignment::M1First ? net.m1() : net.m2();
}
inline NodeId second_monitor(const Network& net, MonitorAssignment a) {
  return a == MonitorAssignment::M1First ? net.m2() : net.m1();
}

// Verdicts for properties (a) .. (g), in that order.
using CertificateVerdicts = std::array<bool, 7>;

inline bool all_true(const CertificateVerdicts& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

inline CertificateVerdicts verify_certificate(const Network& net,
                                              const CyclePairCertificate& cert) {
  const NodeId v = cert.v, w = cert.w;
  if (v >= net.size() || w >= net.size() || v == w || !net.adjacent(v, w)) {
    throw Error(ErrorKind::MalformedCertificate, "v and w are not a link");
  }
  const Link vw(v, w);
  if (!is_cycle(net, cert.c1.nodes) || !cert.c1.has_link(vw)) {
    throw Error(ErrorKind::MalformedCertificate, "c1 is not a cycle through vw");
  }
  if (!is_cycle(net, cert.c2.nodes) || !cert.c2.has_link(vw)) {
    throw Error(ErrorKind::MalformedCertificate, "c2 is not a cycle through vw");
  }
  if (!is_simple_path(net, cert.p1) || !is_simple_path(net, cert.p2)) {
    throw Error(ErrorKind::MalformedCertificate, "p1/p2 are not simple paths");
  }

  auto off_vw = [&](NodeId x) { return x != v && x != w; };
  // Links of C - v - w: cycle links with neither endpoint in {v, w}.
  auto reduced_links = [&](const Cycle& c) {
    std::vector<Link> out;
    for (const Link& l : c.links()) {
      if (off_vw(l.u) && off_vw(l.v)) out.push_back(l);
    }
    return out;
  };
  auto disjoint_links = [](const std::vector<Link>& a, std::vector<Link> b) {
    std::sort(b.begin(), b.end());
    return std::none_of(a.begin(), a.end(), [&](const Link& l) {
      return std::binary_search(b.begin(), b.end(), l);
    });
  };

  CertificateVerdicts out{};
  out[0] = is_face(net, cert.c1);

  const auto l1 = cert.c1.links();
  const auto l2 = cert.c2.links();
  std::vector<Link> shared;
  std::set_intersection(l1.begin(), l1.end(), l2.begin(), l2.end(),
                        std::back_inserter(shared));
  out[1] = shared == std::vector<Link>{vw};

  std::size_t extra = 0;
  for (NodeId x : cert.c1.nodes) extra += off_vw(x) && cert.c2.contains(x);
  out[2] = extra <= 1;

  out[3] = cert.p1.front() == first_monitor(net, cert.assignment) &&
           cert.p2.front() == second_monitor(net, cert.assignment) &&
           off_vw(cert.p1.back()) && cert.c1.contains(cert.p1.back()) &&
           off_vw(cert.p2.back()) && cert.c2.contains(cert.p2.back());

  out[4] = std::none_of(cert.p1.nodes.begin(), cert.p1.nodes.end(),
                        [&](NodeId x) { return cert.p2.contains(x); });

  out[5] = disjoint_links(cert.p1.links(), reduced_links(cert.c1)) &&
           disjoint_links(cert.p2.links(), reduced_links(cert.c2));

  out[6] = !cert.p1.contains(v) && !cert.p1.contains(w) &&
           !cert.p2.contains(v) && !cert.p2.contains(w);
  return out;
}

namespace detail {

// Searches P1 (m*1 -> c1 - v - w) exhaustively and P2 (m*2 -> c2 - v - w)
// by breadth-first search in what P1 leaves free. P1 stops at its first
// node on c1 - v - w, and P2 likewise on c2; truncating a valid path keeps
// it valid, so nothing is lost. With `strict`, P1 must also avoid c2.
inline std::optional<std::pair<SimplePath, SimplePath>> find_monitor_paths(
    const Network& net, const Cycle& c1, const Cycle& c2, NodeId v, NodeId w,
    MonitorAssignment assignment, bool strict, std::size_t& budget) {
  const NodeId s1 = first_monitor(net, assignment);
  const NodeId s2 = second_monitor(net, assignment);
  const std::size_t n = net.size();

  std::vector<char> target1(n, 0), target2(n, 0), blocked1(n, 0);
  for (NodeId x : c1.nodes) target1[x] = 1;
  for (NodeId x : c2.nodes) target2[x] = 1;
  target1[v] = target1[w] = target2[v] = target2[w] = 0;
  if (strict) {
    for (NodeId x : c2.nodes) blocked1[x] = 1;
  }
  blocked1[v] = blocked1[w] = blocked1[s2] = 1;
  if (blocked1[s1]) return std::nullopt;

  auto second_path = [&](const std::vector<NodeId>& p1)
      -> std::optional<SimplePath> {
    std::vector<char> blocked(n, 0);
    for (NodeId x : p1) blocked[x] = 1;
    blocked[v] = blocked[w] = 1;
    if (blocked[s2]) return std::nullopt;
    std::vector<NodeId> parent(n, n);
    std::vector<NodeId> queue{s2};
    blocked[s2] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId x = queue[head];
      if (target2[x]) {
        SimplePath p;
        for (NodeId y = x; y != n; y = parent[y]) p.nodes.push_back(y);
        std::reverse(p.nodes.begin(), p.nodes.end());
        return p;
      }
      for (NodeId y : net.neighbors(x)) {
        if (blocked[y]) continue;
        blocked[y] = 1;
        parent[y] = x;
        queue.push_back(y);
      }
    }
    return std::nullopt;
  };

  std::optional<std::pair<SimplePath, SimplePath>> found;
  auto consider = [&](const std::vector<NodeId>& p1) {
    if (budget == 0) {
      throw Error(ErrorKind::SearchSpaceTooLarge,
                  "monitor path search exceeded the search ceiling");
    }
    --budget;
    if (auto p2 = second_path(p1)) {
      found.emplace(SimplePath{p1}, std::move(*p2));
      return true;
    }
    return false;
  };

  if (target1[s1]) {
    consider({s1});
    return found;
  }
  std::vector<NodeId> p1{s1};
  std::vector<char> on_path(n, 0);
  on_path[s1] = 1;
  std::function<bool()> extend = [&]() {
    for (NodeId y : net.neighbors(p1.back())) {
      if (on_path[y] || blocked1[y]) continue;
      p1.push_back(y);
      if (target1[y]) {
        const bool done = consider(p1);
        p1.pop_back();
        if (done) return true;
        continue;
      }
      on_path[y] = 1;
      if (extend()) return true;
      on_path[y] = 0;
      p1.pop_back();
    }
    return false;
  };
  extend();
  return found;
}

inline std::size_t shared_off_link(const Cycle& a, const Cycle& b, NodeId v,
                                   NodeId w) {
  std::size_t count = 0;
  for (NodeId x : a.nodes) count += x != v && x != w && b.contains(x);
  return count;
}

inline bool only_link_shared(const Cycle& a, const Cycle& b, Link vw) {
  const auto la = a.links();
  const auto lb = b.links();
  std::vector<Link> shared;
  std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(),
                        std::back_inserter(shared));
  return shared == std::vector<Link>{vw};
}

inline std::vector<MonitorAssignment> assignments(const SearchLimits& limits) {
  std::vector<MonitorAssignment> out{MonitorAssignment::M1First,
                                     MonitorAssignment::M2First};
  if (limits.reverse) std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<Cycle> faces_through(const Network& net, Link vw,
                                        const SearchLimits& limits) {
  auto cycles = cycles_through(net, vw, /*induced=*/true, limits);
  std::erase_if(cycles, [&](const Cycle& c) { return !is_face(net, c); });
  return cycles;
}

// First certificate (faces x cycles x assignments x paths) whose cycle pair
// passes `pair_ok`, with P1 avoiding c2 when `strict`.
template <typename PairOk>
std::optional<CyclePairCertificate> search_certificate(
    const Network& net, Link vw, const std::vector<Cycle>& faces,
    const std::vector<Cycle>& cycles, PairOk&& pair_ok, bool strict,
    const SearchLimits& limits) {
  std::size_t budget = limits.ceiling;
  for (const Cycle& c1 : faces) {
    for (const Cycle& c2 : cycles) {
      if (!pair_ok(c1, c2)) continue;
      for (MonitorAssignment a : assignments(limits)) {
        auto paths = find_monitor_paths(net, c1, c2, vw.u, vw.v, a, strict,
                                        budget);
        if (paths) {
          return CyclePairCertificate{vw.u, vw.v, c1, c2,
                                      std::move(paths->first),
                                      std::move(paths->second), a};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Exhaustive search in canonical order; the first certificate satisfying
// (a) .. (g) is returned.
inline CyclePairCertificate find_cycle_pair(const Network& net, Link vw,
                                            const SearchLimits& limits = {}) {
  detail::require_interior(net, vw);
  detail::require_conditions(net);
  const auto faces = detail::faces_through(net, vw, limits);
  const auto cycles = detail::cycles_through(net, vw, false, limits);
  auto cert = detail::search_certificate(
      net, vw, faces, cycles,
      [&](const Cycle& c1, const Cycle& c2) {
        return detail::only_link_shared(c1, c2, vw) &&
               detail::shared_off_link(c1, c2, vw.u, vw.v) <= 1;
      },
      /*strict=*/false, limits);
  if (!cert) {
    throw Error(ErrorKind::SearchExhausted,
                "no cycle-pair certificate for " + net.link_name(vw));
  }
  return *cert;
}

// ---------------------------------------------------------------------------
// Border links.

enum class BorderVerdict { NonBorder, BorderClass1, BorderClass2 };

inline std::string_view to_string(BorderVerdict v) {
  switch (v) {
    case BorderVerdict::NonBorder: return "NON_BORDER";
    case BorderVerdict::BorderClass1: return "BORDER_CLASS_1";
    case BorderVerdict::BorderClass2: return "BORDER_CLASS_2";
  }
  return "NON_BORDER";
}

struct BorderClassification {
  BorderVerdict verdict = BorderVerdict::NonBorder;
  // NON_BORDER: a certificate meeting the strengthened conditions.
  // BORDER_CLASS_1: a certificate with V(c1) & V(c2) = {v, w} whose p1
  // unavoidably meets c2. BORDER_CLASS_2: any certificate (all of them
  // share a third cycle node).
  std::optional<CyclePairCertificate> certificate;
  std::vector<NodeId> obstruction;  // class 1: p1 nodes on c2 - v - w
  std::optional<NodeId> shared_node;  // class 2: the third common node r
  std::string description;

  bool is_border() const { return verdict != BorderVerdict::NonBorder; }
};

inline BorderClassification classify_link(const Network& net, Link vw,
                                          const SearchLimits& limits = {}) {
  detail::require_interior(net, vw);
  detail::require_conditions(net);
  const auto faces = detail::faces_through(net, vw, limits);
  const auto cycles = detail::cycles_through(net, vw, false, limits);
  const NodeId v = vw.u, w = vw.v;

  auto meet_only_at_link = [&](const Cycle& c1, const Cycle& c2) {
    return detail::shared_off_link(c1, c2, v, w) == 0;
  };

  BorderClassification out;
  if (auto cert = detail::search_certificate(net, vw, faces, cycles,
                                             meet_only_at_link, true, limits)) {
    out.verdict = BorderVerdict::NonBorder;
    out.certificate = std::move(cert);
    out.description = "certificate with V(c1)&V(c2)={v,w} and p1 clear of c2";
    return out;
  }
  if (auto cert = detail::search_certificate(net, vw, faces, cycles,
                                             meet_only_at_link, false,
                                             limits)) {
    out.verdict = BorderVerdict::BorderClass1;
    for (NodeId x : cert->p1.nodes) {
      if (x != v && x != w && cert->c2.contains(x)) out.obstruction.push_back(x);
    }
    out.certificate = std::move(cert);
    out.description = "every p1 meets c2 - v - w";
    return out;
  }
  auto cert = detail::search_certificate(
      net, vw, faces, cycles,
      [&](const Cycle& c1, const Cycle& c2) {
        return detail::only_link_shared(c1, c2, vw) &&
               detail::shared_off_link(c1, c2, v, w) <= 1;
      },
      false, limits);
  if (!cert) {
    throw Error(ErrorKind::SearchExhausted,
                "no cycle-pair certificate for " + net.link_name(vw));
  }
  out.verdict = BorderVerdict::BorderClass2;
  for (NodeId x : cert->c1.nodes) {
    if (x != v && x != w && cert->c2.contains(x)) out.shared_node = x;
  }
  out.certificate = std::move(cert);
  out.description = "every cycle pair shares a third node r";
  return out;
}

// Every face of the network, canonical order.
inline std::vector<Cycle> enumerate_faces(const Network& net,
                                          const SearchLimits& limits = {}) {
  std::vector<Cycle> cycles;
  std::vector<NodeId> path;
  std::vector<char> on_path(net.size(), 0);

  // Chordless cycles whose smallest node is path[0].
  std::function<void()> extend = [&]() {
    const NodeId s = path.front();
    for (NodeId x : net.neighbors(path.back())) {
      if (x <= s || on_path[x]) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size() && !chord; ++i) {
        chord = net.adjacent(x, path[i]);
      }
      if (chord) continue;
      if (path.size() >= 2 && net.adjacent(x, s)) {
        if (path[1] < x) {
          if (cycles.size() == limits.ceiling) {
            throw Error(ErrorKind::SearchSpaceTooLarge,
                        "more than " + std::to_string(limits.ceiling) +
                            " chordless cycles");
          }
          auto seq = path;
          seq.push_back(x);
          cycles.push_back(Cycle{std::move(seq)});
        }
        continue;
      }
      on_path[x] = 1;
      path.push_back(x);
      extend();
      path.pop_back();
      on_path[x] = 0;
    }
  };
  for (NodeId s = 0; s < net.size(); ++s) {
    path = {s};
    on_path[s] = 1;
    extend();
    on_path[s] = 0;
  }

  std::erase_if(cycles, [&](const Cycle& c) { return !is_face(net, c); });
  std::sort(cycles.begin(), cycles.end(), cycle_less);
  return cycles;
}

struct FaceBorderCount {
  Cycle face;
  std::size_t interior_links = 0;
  std::size_t border_links = 0;
};

// Number of border links on each face.
inline std::vector<FaceBorderCount> check_prop4a(
    const Network& net, const SearchLimits& limits = {}) {
  detail::require_conditions(net);
  std::map<Link, bool> border;
  std::vector<FaceBorderCount> out;
  for (const Cycle& face : enumerate_faces(net, limits)) {
    FaceBorderCount count{face};
    for (const Link& l : face.links()) {
      if (!net.is_interior(l)) continue;
      ++count.interior_links;
      auto it = border.find(l);
      if (it == border.end()) {
        it = border.emplace(l, classify_link(net, l, limits).is_border()).first;
      }
      count.border_links += it->second;
    }
    out.push_back(std::move(count));
  }
  return out;
}

// A face through the border link vw that avoids both monitors.
inline Cycle find_monitor_face(const Network& net, Link vw,
                               const SearchLimits& limits = {}) {
  if (!classify_link(net, vw, limits).is_border()) {
    throw Error(ErrorKind::PreconditionFailed,
                net.link_name(vw) + " is not a border link");
  }
  for (const Cycle& face : detail::faces_through(net, vw, limits)) {
    if (!face.contains(net.m1()) && !face.contains(net.m2())) return face;
  }
  throw Error(ErrorKind::NotFound,
              "no monitor-free face through border link " + net.link_name(vw));
}

struct MonitorPaths {
  SimplePath from_m1;  // ends at v, or at w when `swapped`
  SimplePath from_m2;
  bool swapped = false;
};

// Node-disjoint m1 -> v and m2 -> w paths that touch the face only at
// their final node. The opposite pairing (m1 -> w, m2 -> v) is tried when
// the given one has no solution.
inline MonitorPaths find_disjoint_monitor_paths(
    const Network& net, const Cycle& face, NodeId v, NodeId w,
    const SearchLimits& limits = {}) {
  if (v >= net.size() || w >= net.size() || v == w ||
      !face.has_link(Link(v, w))) {
    throw Error(ErrorKind::PreconditionFailed, "vw is not a link of the face");
  }
  if (!is_cycle(net, face.nodes) || !is_face(net, face)) {
    throw Error(ErrorKind::PreconditionFailed, "not a face");
  }
  if (face.contains(net.m1()) || face.contains(net.m2())) {
    throw Error(ErrorKind::PreconditionFailed,
                "face uses a monitor, so not all of its links are interior");
  }
  detail::require_conditions(net);

  const std::size_t n = net.size();
  std::size_t budget = limits.ceiling;

  auto attempt = [&](NodeId end1, NodeId end2) -> std::optional<MonitorPaths> {
    std::vector<char> blocked1(n, 0);
    for (NodeId x : face.nodes) blocked1[x] = 1;
    blocked1[end1] = 0;
    blocked1[net.m2()] = 1;

    auto second = [&](const std::vector<NodeId>& p1) -> std::optional<SimplePath> {
      std::vector<char> blocked(n, 0);
      for (NodeId x : face.nodes) blocked[x] = 1;
      blocked[end2] = 0;
      for (NodeId x : p1) blocked[x] = 1;
      std::vector<NodeId> parent(n, n);
      std::vector<NodeId> queue{net.m2()};
      blocked[net.m2()] = 1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId x = queue[head];
        if (x == end2) {
          SimplePath p;
          for (NodeId y = x; y != n; y = parent[y]) p.nodes.push_back(y);
          std::reverse(p.nodes.begin(), p.nodes.end());
          return p;
        }
        for (NodeId y : net.neighbors(x)) {
          if (blocked[y]) continue;
          blocked[y] = 1;
          parent[y] = x;
          queue.push_back(y);
        }
      }
      return std::nullopt;
    };

    std::optional<MonitorPaths> found;
    std::vector<NodeId> p1{net.m1()};
    std::vector<char> on_path(n, 0);
    on_path[net.m1()] = 1;
    std::function<bool()> extend = [&]() {
      for (NodeId y : net.neighbors(p1.back())) {
        if (on_path[y] || blocked1[y]) continue;
        p1.push_back(y);
        if (y == end1) {
          if (budget-- == 0) {
            throw Error(ErrorKind::SearchSpaceTooLarge,
                        "monitor path search exceeded the search ceiling");
          }
          if (auto p2 = second(p1)) {
            found = MonitorPaths{SimplePath{p1}, std::move(*p2), end1 != v};
            return true;
          }
          p1.pop_back();
          continue;
        }
        on_path[y] = 1;
        if (extend()) return true;
        on_path[y] = 0;
        p1.pop_back();
      }
      return false;
    };
    extend();
    return found;
  };

  if (auto found = attempt(v, w)) return *found;
  if (auto found = attempt(w, v)) return *found;
  throw Error(ErrorKind::NotFound,
              "no disjoint monitor paths to the ends of " +
                  net.link_name(Link(v, w)));
}

}  // namespace tomolink
