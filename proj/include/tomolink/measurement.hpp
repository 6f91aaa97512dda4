#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tomolink/connectivity.hpp"
#include "tomolink/error.hpp"
#include "tomolink/matrix.hpp"
#include "tomolink/network.hpp"
#include "tomolink/rational.hpp"

namespace tomolink {

inline constexpr std::size_t kDefaultPathCap = 100000;

// All simple m1 -> m2 paths, grouped by first hop a_i, then by last hop
// b_j, lexicographic within a group.
inline std::vector<SimplePath> enumerate_simple_paths(
    const Network& net, std::size_t cap = kDefaultPathCap) {
  std::vector<SimplePath> out;
  std::vector<char> on_path(net.size(), 0);
  std::vector<NodeId> stack{net.m1()};
  on_path[net.m1()] = 1;

  std::function<void(NodeId)> extend = [&](NodeId x) {
    for (NodeId y : net.neighbors(x)) {
      if (on_path[y]) continue;
      if (y == net.m2()) {
        if (out.size() == cap) {
          throw Error(ErrorKind::CapExceeded,
                      "simple path count exceeds cap " + std::to_string(cap) +
                          " (" + std::to_string(out.size()) +
                          " enumerated so far)");
        }
        out.push_back(SimplePath{stack});
        out.back().nodes.push_back(y);
        continue;
      }
      on_path[y] = 1;
      stack.push_back(y);
      extend(y);
      stack.pop_back();
      on_path[y] = 0;
    }
  };
  extend(net.m1());

  std::sort(out.begin(), out.end(),
            [](const SimplePath& p, const SimplePath& q) {
              const auto key = [](const SimplePath& s) {
                return std::make_pair(s.nodes[1], s.nodes[s.nodes.size() - 2]);
              };
              if (key(p) != key(q)) return key(p) < key(q);
              return p.nodes < q.nodes;
            });
  return out;
}

struct MeasurementMatrix {
  InteriorDecomposition decomposition;
  std::vector<SimplePath> paths;  // row r measures paths[r]
  RationalMatrix rows;            // path-by-column 0/1 incidence
  std::vector<std::string> column_labels;

  const std::vector<Link>& columns() const { return decomposition.columns; }

  std::optional<std::size_t> column_of(Link l) const {
    const auto& cols = columns();
    const auto it = std::find(cols.begin(), cols.end(), l);
    if (it == cols.end()) return std::nullopt;
    return static_cast<std::size_t>(it - cols.begin());
  }
};

inline MeasurementMatrix build_measurement_matrix(
    const Network& net, std::vector<SimplePath> paths) {
  MeasurementMatrix m;
  m.decomposition = interior_decomposition(net);
  for (const Link& l : m.columns()) m.column_labels.push_back(net.link_name(l));

  std::map<Link, std::size_t> column;
  for (std::size_t c = 0; c < m.columns().size(); ++c) {
    column[m.columns()[c]] = c;
  }

  m.rows = RationalMatrix(0, m.columns().size());
  std::vector<Rational> row(m.columns().size());
  for (const SimplePath& p : paths) {
    if (p.nodes.size() < 3 || p.front() != net.m1() || p.back() != net.m2() ||
        !is_simple_path(net, p)) {
      throw Error(ErrorKind::PreconditionFailed,
                  "measurement rows must be simple m1 -> m2 paths");
    }
    std::fill(row.begin(), row.end(), Rational(0));
    for (const Link& l : p.links()) row[column.at(l)] = 1;
    m.rows.append_row(row);
  }
  m.paths = std::move(paths);
  return m;
}

inline MeasurementMatrix build_measurement_matrix(
    const Network& net, std::size_t cap = kDefaultPathCap) {
  return build_measurement_matrix(net, enumerate_simple_paths(net, cap));
}

// ---------------------------------------------------------------------------
// Block transformation of R into
//
//     [ 1 0 .. | I   | B ]   k2 rows      (r_11 .. r_1k2)
//     [-1 I .. | 0   | T ]   k1-1 rows    (r_i1 - r_11)
//     [ 0      | 0   | L ]   the rest
//
// The row operations run in this order:
//   per (a_i, b_j) group, subtract the group's first row from the others
//   (these differences form L_1); stack all group heads above L_1; then
//   (i)  row qk2+i -= row i            for q = 1..k1-1, i = 1..k2
//   (ii) row qk2+i -= row qk2+1        for q = 1..k1-1, i = 2..k2
//   (iii) move the rows touched by (ii) to the bottom.
// Stage (ii) rows evaluate to r_ij - r_1j - r_i1 + r_11.

// Sparse integer combination of original rows: row index -> coefficient.
using RowCombination = std::map<std::size_t, long long>;

struct TransformedMatrix {
  RationalMatrix matrix;  // same columns as the measurement matrix
  std::vector<RowCombination> provenance;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::size_t kh = 0;

  std::size_t exterior_columns() const { return k1 + k2; }
  std::size_t t_begin() const { return k2; }
  std::size_t l_begin() const { return k2 + k1 - 1; }

  RationalMatrix B() const {
    return matrix.block(0, t_begin(), exterior_columns(), matrix.cols());
  }
  RationalMatrix T() const {
    return matrix.block(t_begin(), l_begin(), exterior_columns(),
                        matrix.cols());
  }
  RationalMatrix L() const {
    return matrix.block(l_begin(), matrix.rows(), exterior_columns(),
                        matrix.cols());
  }
};

inline TransformedMatrix lemma1_transform(const MeasurementMatrix& m) {
  const auto& d = m.decomposition;
  const std::size_t k1 = d.k1(), k2 = d.k2();

  auto index_in = [](const std::vector<NodeId>& list, NodeId x) {
    return static_cast<std::size_t>(
        std::lower_bound(list.begin(), list.end(), x) - list.begin());
  };
  std::vector<std::vector<std::vector<std::size_t>>> groups(
      k1, std::vector<std::vector<std::size_t>>(k2));
  for (std::size_t r = 0; r < m.paths.size(); ++r) {
    const auto& nodes = m.paths[r].nodes;
    groups[index_in(d.m1_exterior, nodes[1])]
          [index_in(d.m2_exterior, nodes[nodes.size() - 2])]
              .push_back(r);
  }
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k2; ++j) {
      if (groups[i][j].empty()) {
        throw Error(ErrorKind::InteriorDisconnected,
                    "no interior path between exterior neighbours #" +
                        std::to_string(i + 1) + " of m1 and #" +
                        std::to_string(j + 1) + " of m2");
      }
    }
  }

  struct WorkRow {
    std::vector<Rational> values;
    RowCombination provenance;
  };
  auto original = [&](std::size_t r) {
    const auto row = m.rows.row(r);
    return WorkRow{{row.begin(), row.end()}, {{r, 1}}};
  };
  auto subtract = [](WorkRow& target, const WorkRow& source) {
    for (std::size_t c = 0; c < target.values.size(); ++c) {
      target.values[c] -= source.values[c];
    }
    for (const auto& [r, k] : source.provenance) {
      if ((target.provenance[r] -= k) == 0) target.provenance.erase(r);
    }
  };

  // Group heads, i-major, followed by L_1 = L_{a_1} .. L_{a_k1}.
  std::vector<WorkRow> heads;
  std::vector<WorkRow> l_first;
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k2; ++j) heads.push_back(original(groups[i][j][0]));
    for (std::size_t j = 0; j < k2; ++j) {
      const WorkRow head = original(groups[i][j][0]);
      for (std::size_t p = 1; p < groups[i][j].size(); ++p) {
        WorkRow row = original(groups[i][j][p]);
        subtract(row, head);
        l_first.push_back(std::move(row));
      }
    }
  }

  for (std::size_t q = 1; q < k1; ++q) {
    for (std::size_t i = 0; i < k2; ++i) subtract(heads[q * k2 + i], heads[i]);
  }
  for (std::size_t q = 1; q < k1; ++q) {
    for (std::size_t i = 1; i < k2; ++i) {
      subtract(heads[q * k2 + i], heads[q * k2]);
    }
  }

  std::vector<WorkRow*> order;
  for (std::size_t i = 0; i < k2; ++i) order.push_back(&heads[i]);
  for (std::size_t q = 1; q < k1; ++q) order.push_back(&heads[q * k2]);
  for (auto& row : l_first) order.push_back(&row);
  for (std::size_t q = 1; q < k1; ++q) {
    for (std::size_t i = 1; i < k2; ++i) order.push_back(&heads[q * k2 + i]);
  }

  TransformedMatrix out;
  out.k1 = k1;
  out.k2 = k2;
  out.kh = d.kh();
  out.matrix = RationalMatrix(0, m.rows.cols());
  for (WorkRow* row : order) {
    out.matrix.append_row(row->values);
    out.provenance.push_back(std::move(row->provenance));
  }
  return out;
}

struct BlockShapeReport {
  bool b_shape = false;         // k2 x kh
  bool b_boolean = false;       // entries in {0, 1}
  bool t_shape = false;         // (k1-1) x kh
  bool t_signed = false;        // entries in {-1, 0, 1}
  bool l_exterior_zero = false; // L rows vanish on exterior columns
  bool exterior_pattern = false;  // [1 e_1 | e_j] for B rows, [-1 e_i | 0] for T rows

  bool ok() const {
    return b_shape && b_boolean && t_shape && t_signed && l_exterior_zero &&
           exterior_pattern;
  }
};

inline BlockShapeReport check_block_shape(const TransformedMatrix& t) {
  BlockShapeReport r;
  const auto b = t.B();
  const auto tt = t.T();
  r.b_shape = b.rows() == t.k2 && b.cols() == t.kh;
  r.t_shape = tt.rows() + 1 == t.k1 && tt.cols() == t.kh;

  auto all_of = [](const RationalMatrix& m, auto&& pred) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (const auto& x : m.row(i)) {
        if (!pred(x)) return false;
      }
    }
    return true;
  };
  r.b_boolean = all_of(b, [](const Rational& x) { return x == 0 || x == 1; });
  r.t_signed = all_of(
      tt, [](const Rational& x) { return x == 0 || x == 1 || x == -1; });

  const std::size_t ext = t.exterior_columns();
  r.l_exterior_zero = true;
  for (std::size_t row = t.l_begin(); row < t.matrix.rows(); ++row) {
    for (std::size_t c = 0; c < ext; ++c) {
      if (t.matrix(row, c) != 0) r.l_exterior_zero = false;
    }
  }

  r.exterior_pattern = true;
  for (std::size_t j = 0; j < t.k2; ++j) {
    for (std::size_t c = 0; c < ext; ++c) {
      const Rational want = (c == 0 || c == t.k1 + j) ? 1 : 0;
      if (t.matrix(j, c) != want) r.exterior_pattern = false;
    }
  }
  for (std::size_t q = 1; q < t.k1; ++q) {
    const std::size_t row = t.t_begin() + q - 1;
    for (std::size_t c = 0; c < ext; ++c) {
      const Rational want = c == 0 ? -1 : (c == q ? 1 : 0);
      if (t.matrix(row, c) != want) r.exterior_pattern = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Identifiability by rank.

inline std::size_t rank(const MeasurementMatrix& m) { return rank(m.rows); }

// rank(R) == rank(R with the unit row of `link` appended).
inline bool link_identifiable(const MeasurementMatrix& m, Link link) {
  const auto column = m.column_of(link);
  if (!column) {
    throw Error(ErrorKind::UnknownColumn, "link is not a matrix column");
  }
  RationalMatrix augmented = m.rows;
  std::vector<Rational> unit(m.rows.cols());
  unit[*column] = 1;
  augmented.append_row(unit);
  return rank(m.rows) == rank(augmented);
}

// Solves R w = c and returns the value of every uniquely determined
// coordinate.
inline std::map<Link, Rational> recover_metrics(
    const MeasurementMatrix& m, std::span<const Rational> measurements) {
  if (measurements.size() != m.rows.rows()) {
    throw Error(ErrorKind::InconsistentMeasurements,
                "expected " + std::to_string(m.rows.rows()) +
                    " measurements, got " +
                    std::to_string(measurements.size()));
  }
  const std::size_t n = m.rows.cols();
  RationalMatrix system(m.rows.rows(), n + 1);
  for (std::size_t r = 0; r < m.rows.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) system(r, c) = m.rows(r, c);
    system(r, n) = measurements[r];
  }
  const Echelon e = reduced_row_echelon(std::move(system));
  if (!e.pivots.empty() && e.pivots.back() == n) {
    throw Error(ErrorKind::InconsistentMeasurements,
                "measurements are not the path sums of any link weights");
  }

  std::map<Link, Rational> out;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    std::size_t nonzero = 0;
    for (std::size_t c = 0; c < n; ++c) nonzero += (e.reduced(r, c) != 0);
    if (nonzero == 1) out[m.columns()[e.pivots[r]]] = e.reduced(r, n);
  }
  return out;
}

struct IdentifiabilityReport {
  ConditionReport conditions;
  std::vector<Link> columns;
  std::size_t path_count = 0;
  std::size_t rank = 0;
  std::vector<bool> identifiable;  // aligned with columns
  std::optional<std::map<Link, Rational>> recovered;

  bool identifiable_link(Link l) const {
    const auto it = std::find(columns.begin(), columns.end(), l);
    return it != columns.end() && identifiable[it - columns.begin()];
  }

  bool all_interior_identifiable(const Network& net) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (net.is_interior(columns[c]) && !identifiable[c]) return false;
    }
    return true;
  }
};

inline IdentifiabilityReport identify(const Network& net,
                                      const MeasurementMatrix& m) {
  IdentifiabilityReport report;
  report.conditions = check_conditions(net);
  report.columns = m.columns();
  report.path_count = m.paths.size();
  const Echelon e = reduced_row_echelon(m.rows);
  report.rank = e.rank();
  report.identifiable = unit_vectors_in_row_space(e);
  return report;
}

inline IdentifiabilityReport identify(
    const Network& net, std::optional<std::span<const Rational>> measurements,
    std::size_t cap = kDefaultPathCap) {
  const MeasurementMatrix m = build_measurement_matrix(net, cap);
  IdentifiabilityReport report = identify(net, m);
  if (measurements) report.recovered = recover_metrics(m, *measurements);
  return report;
}

}  // namespace tomolink
