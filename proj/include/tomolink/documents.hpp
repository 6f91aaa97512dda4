#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tomolink/connectivity.hpp"
#include "tomolink/construction.hpp"
#include "tomolink/error.hpp"
#include "tomolink/measurement.hpp"
#include "tomolink/network.hpp"
#include "tomolink/rational.hpp"
#include "tomolink/simulation.hpp"

// JSON report documents. Every document carries a "schema" member of the
// form "tomolink.<kind>/1"; validate_document() checks the members each
// kind requires. Rationals are always written as "p/q" strings.
namespace tomolink {

using json = nlohmann::json;

namespace schema {
inline constexpr std::string_view conditions = "tomolink.conditions/1";
inline constexpr std::string_view paths = "tomolink.paths/1";
inline constexpr std::string_view transform = "tomolink.transform/1";
inline constexpr std::string_view identifiability = "tomolink.identifiability/1";
inline constexpr std::string_view certificate = "tomolink.certificate/1";
inline constexpr std::string_view classification = "tomolink.classification/1";
inline constexpr std::string_view roundtrip = "tomolink.roundtrip/1";
inline constexpr std::string_view error = "tomolink.error/1";
}  // namespace schema

namespace detail {

inline json node_list(const Network& net, const std::vector<NodeId>& nodes) {
  json out = json::array();
  for (NodeId x : nodes) out.push_back(net.name(x));
  return out;
}

inline json conditions_body(const Network& net, const ConditionReport& r) {
  json failures = json::array();
  for (const Link& l : r.condition_one.failures) failures.push_back(net.link_name(l));
  json witness = nullptr;
  if (r.condition_two.witness) {
    witness = {net.name(r.condition_two.witness->first),
               net.name(r.condition_two.witness->second)};
  }
  return {
      {"method", r.method == ConditionMethod::Characterization
                     ? "characterization"
                     : "brute_force"},
      {"pass", r.pass()},
      {"condition_one", {{"pass", r.condition_one.pass}, {"failures", failures}}},
      {"condition_two", {{"pass", r.condition_two.pass}, {"witness", witness}}},
  };
}

inline json certificate_body(const Network& net, const CyclePairCertificate& c,
                             const CertificateVerdicts& verdicts) {
  return {
      {"link", net.link_name(c.link())},
      {"v", net.name(c.v)},
      {"w", net.name(c.w)},
      {"assignment",
       c.assignment == MonitorAssignment::M1First ? "m1_first" : "m2_first"},
      {"c1", node_list(net, c.c1.nodes)},
      {"c2", node_list(net, c.c2.nodes)},
      {"p1", node_list(net, c.p1.nodes)},
      {"p2", node_list(net, c.p2.nodes)},
      {"verdicts", verdicts},
  };
}

}  // namespace detail

inline json conditions_document(const Network& net, const ConditionReport& r) {
  json doc = detail::conditions_body(net, r);
  doc["schema"] = schema::conditions;
  return doc;
}

inline json paths_document(const Network& net,
                           const std::vector<SimplePath>& paths) {
  json rows = json::array();
  for (const SimplePath& p : paths) rows.push_back(detail::node_list(net, p.nodes));
  return {{"schema", schema::paths}, {"count", paths.size()}, {"paths", rows}};
}

// Block boundaries are half-open [first, last) index ranges.
inline json transform_document(const MeasurementMatrix& m,
                               const TransformedMatrix& t) {
  const std::size_t cols = t.matrix.cols();
  const std::size_t ext = t.exterior_columns();
  auto range = [](std::size_t a, std::size_t b) { return json::array({a, b}); };

  json rows = json::array();
  for (std::size_t r = 0; r < t.matrix.rows(); ++r) {
    json row = json::array();
    for (const Rational& x : t.matrix.row(r)) row.push_back(to_string(x));
    rows.push_back(std::move(row));
  }
  json provenance = json::array();
  for (const RowCombination& combo : t.provenance) {
    json terms = json::array();
    for (const auto& [source, coeff] : combo) terms.push_back({source, coeff});
    provenance.push_back(std::move(terms));
  }
  const BlockShapeReport shape = check_block_shape(t);
  return {
      {"schema", schema::transform},
      {"k1", t.k1},
      {"k2", t.k2},
      {"kh", t.kh},
      {"columns", m.column_labels},
      {"blocks",
       {{"B", {{"rows", range(0, t.t_begin())}, {"columns", range(ext, cols)}}},
        {"T",
         {{"rows", range(t.t_begin(), t.l_begin())},
          {"columns", range(ext, cols)}}},
        {"L",
         {{"rows", range(t.l_begin(), t.matrix.rows())},
          {"columns", range(ext, cols)}}},
        {"exterior_columns", range(0, ext)}}},
      {"shape_ok", shape.ok()},
      {"rank", rank(t.matrix)},
      {"rows", rows},
      {"provenance", provenance},
  };
}

inline json identifiability_document(const Network& net,
                                     const IdentifiabilityReport& r) {
  json columns = json::array();
  for (std::size_t c = 0; c < r.columns.size(); ++c) {
    columns.push_back({{"link", net.link_name(r.columns[c])},
                       {"interior", net.is_interior(r.columns[c])},
                       {"identifiable", static_cast<bool>(r.identifiable[c])}});
  }
  json doc = {
      {"schema", schema::identifiability},
      {"conditions", detail::conditions_body(net, r.conditions)},
      {"path_count", r.path_count},
      {"rank", r.rank},
      {"all_interior_identifiable", r.all_interior_identifiable(net)},
      {"columns", columns},
  };
  if (r.recovered) {
    json recovered = json::object();
    for (const auto& [link, value] : *r.recovered) {
      recovered[net.link_name(link)] = to_string(value);
    }
    doc["recovered"] = recovered;
  }
  return doc;
}

inline json certificate_document(const Network& net,
                                 const CyclePairCertificate& c) {
  json doc = detail::certificate_body(net, c, verify_certificate(net, c));
  doc["schema"] = schema::certificate;
  return doc;
}

inline json classification_document(const Network& net, Link link,
                                    const BorderClassification& b) {
  json doc = {
      {"schema", schema::classification},
      {"link", net.link_name(link)},
      {"verdict", to_string(b.verdict)},
      {"border", b.is_border()},
      {"certificate", nullptr},
      {"obstruction", detail::node_list(net, b.obstruction)},
      {"shared_node", nullptr},
      {"description", b.description},
  };
  if (b.certificate) {
    doc["certificate"] = detail::certificate_body(
        net, *b.certificate, verify_certificate(net, *b.certificate));
  }
  if (b.shared_node) doc["shared_node"] = net.name(*b.shared_node);
  return doc;
}

struct GeneratorParameters {
  std::size_t nodes = 0;
  std::size_t extra_links = 0;
  std::uint64_t seed = 0;
};

inline json roundtrip_document(const Network& net, const GeneratorParameters& g,
                               const RoundTripReport& r) {
  json links = json::array();
  for (const RoundTripLink& l : r.links) {
    links.push_back({{"link", net.link_name(l.link)},
                     {"assigned", to_string(l.assigned)},
                     {"identifiable", l.identifiable},
                     {"recovered", l.recovered ? json(to_string(*l.recovered))
                                               : json(nullptr)}});
  }
  return {
      {"schema", schema::roundtrip},
      {"generator",
       {{"nodes", g.nodes}, {"extra_links", g.extra_links}, {"seed", g.seed}}},
      {"digest", r.digest},
      {"network", to_json(net)},
      {"conditions", detail::conditions_body(net, r.conditions)},
      {"path_count", r.path_count},
      {"rank", r.rank},
      {"links", links},
      {"exact_match", r.exact_match},
  };
}

inline json error_document(const Error& e) {
  return {{"schema", schema::error},
          {"kind", to_string(e.kind())},
          {"code", to_string(e.code())},
          {"message", e.what()},
          {"exit_code", exit_code(e.kind())}};
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

class DocumentChecker {
 public:
  explicit DocumentChecker(const json& doc) : doc_(doc) {}

  const json& require(const json& obj, std::string_view key,
                      json::value_t type) {
    const std::string k(key);
    if (!obj.is_object() || !obj.contains(k)) fail("missing member '" + k + "'");
    const json& v = obj.at(k);
    const bool ok = type == json::value_t::number_unsigned
                        ? v.is_number_integer() && v.get<long long>() >= 0
                        : v.type() == type;
    if (!ok) fail("member '" + k + "' has the wrong type");
    return v;
  }

  const json& require(std::string_view key, json::value_t type) {
    return require(doc_, key, type);
  }

  void string_array(const json& v, std::string_view what) {
    if (!v.is_array()) fail(std::string(what) + " must be an array");
    for (const json& x : v) {
      if (!x.is_string()) fail(std::string(what) + " must hold strings");
    }
  }

  void rational(const json& v, std::string_view what) {
    if (!v.is_string()) fail(std::string(what) + " must be a \"p/q\" string");
    const auto s = v.get<std::string>();
    try {
      if (s.find('/') == std::string::npos) throw Error(ErrorKind::MalformedInput, s);
      const Rational q = parse_rational(s);
      if (to_string(q) != s) fail(std::string(what) + " is not in lowest terms");
    } catch (const Error&) {
      fail(std::string(what) + " is not a rational: " + s);
    }
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::MalformedInput, "invalid document: " + why);
  }

 private:
  const json& doc_;
};

inline void check_conditions_body(DocumentChecker& c, const json& body) {
  using T = json::value_t;
  c.require(body, "pass", T::boolean);
  const auto& method = c.require(body, "method", T::string);
  if (method != "characterization" && method != "brute_force") {
    c.fail("unknown condition method");
  }
  const auto& one = c.require(body, "condition_one", T::object);
  c.require(one, "pass", T::boolean);
  c.string_array(c.require(one, "failures", T::array), "failures");
  const auto& two = c.require(body, "condition_two", T::object);
  c.require(two, "pass", T::boolean);
  const auto& witness = two.at("witness");
  if (!witness.is_null()) {
    c.string_array(witness, "witness");
    if (witness.size() != 2) c.fail("witness must name two nodes");
  }
}

inline void check_certificate_body(DocumentChecker& c, const json& body) {
  using T = json::value_t;
  for (const char* key : {"link", "v", "w", "assignment"}) {
    c.require(body, key, T::string);
  }
  for (const char* key : {"c1", "c2", "p1", "p2"}) {
    c.string_array(c.require(body, key, T::array), key);
  }
  const auto& verdicts = c.require(body, "verdicts", T::array);
  if (verdicts.size() != 7) c.fail("verdicts must have 7 entries");
  for (const json& v : verdicts) {
    if (!v.is_boolean()) c.fail("verdicts must be booleans");
  }
}

}  // namespace detail

// Throws Error{MalformedInput} describing the first problem found.
inline void validate_document(const json& doc) {
  using T = json::value_t;
  detail::DocumentChecker c(doc);
  if (!doc.is_object()) c.fail("not an object");
  const std::string kind = c.require("schema", T::string).get<std::string>();

  if (kind == schema::conditions) {
    detail::check_conditions_body(c, doc);
  } else if (kind == schema::paths) {
    const auto count = c.require("count", T::number_unsigned).get<std::size_t>();
    const auto& paths = c.require("paths", T::array);
    if (paths.size() != count) c.fail("count disagrees with paths");
    for (const json& p : paths) {
      c.string_array(p, "path");
      if (p.size() < 2) c.fail("a path needs two endpoints");
    }
  } else if (kind == schema::transform) {
    for (const char* key : {"k1", "k2", "kh", "rank"}) {
      c.require(key, T::number_unsigned);
    }
    c.require("shape_ok", T::boolean);
    const auto& columns = c.require("columns", T::array);
    c.string_array(columns, "columns");
    const auto& rows = c.require("rows", T::array);
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != columns.size()) {
        c.fail("row width disagrees with columns");
      }
      for (const json& x : row) c.rational(x, "matrix entry");
    }
    const auto& provenance = c.require("provenance", T::array);
    if (provenance.size() != rows.size()) c.fail("one provenance entry per row");
    for (const json& terms : provenance) {
      if (!terms.is_array()) c.fail("provenance entries must be arrays");
      for (const json& t : terms) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_unsigned() ||
            !t[1].is_number_integer()) {
          c.fail("provenance terms are [row, coefficient]");
        }
      }
    }
    const auto& blocks = c.require("blocks", T::object);
    for (const char* key : {"B", "T", "L"}) {
      const auto& block = c.require(blocks, key, T::object);
      for (const char* side : {"rows", "columns"}) {
        const auto& r = c.require(block, side, T::array);
        if (r.size() != 2 || !r[0].is_number_unsigned() ||
            !r[1].is_number_unsigned() || r[0] > r[1]) {
          c.fail("block ranges are [first, last)");
        }
      }
    }
    c.require(blocks, "exterior_columns", T::array);
  } else if (kind == schema::identifiability) {
    detail::check_conditions_body(c, c.require("conditions", T::object));
    c.require("path_count", T::number_unsigned);
    c.require("rank", T::number_unsigned);
    c.require("all_interior_identifiable", T::boolean);
    for (const json& col : c.require("columns", T::array)) {
      c.require(col, "link", T::string);
      c.require(col, "interior", T::boolean);
      c.require(col, "identifiable", T::boolean);
    }
    if (doc.contains("recovered")) {
      const auto& recovered = c.require("recovered", T::object);
      for (const auto& [link, value] : recovered.items()) c.rational(value, link);
    }
  } else if (kind == schema::certificate) {
    detail::check_certificate_body(c, doc);
  } else if (kind == schema::classification) {
    c.require("link", T::string);
    c.require("border", T::boolean);
    c.require("description", T::string);
    const auto& verdict = c.require("verdict", T::string);
    if (verdict != "NON_BORDER" && verdict != "BORDER_CLASS_1" &&
        verdict != "BORDER_CLASS_2") {
      c.fail("unknown verdict");
    }
    c.string_array(c.require("obstruction", T::array), "obstruction");
    if (!doc.contains("certificate")) c.fail("missing member 'certificate'");
    if (!doc.at("certificate").is_null()) {
      detail::check_certificate_body(c, doc.at("certificate"));
    }
    if (!doc.contains("shared_node") ||
        !(doc.at("shared_node").is_null() || doc.at("shared_node").is_string())) {
      c.fail("shared_node must be a node name or null");
    }
  } else if (kind == schema::roundtrip) {
    const auto& g = c.require("generator", T::object);
    for (const char* key : {"nodes", "extra_links", "seed"}) {
      c.require(g, key, T::number_unsigned);
    }
    const auto& digest = c.require("digest", T::string).get<std::string>();
    if (digest.size() != 16) c.fail("digest must be 16 hex digits");
    try {
      network_from_json(c.require("network", T::object));
    } catch (const Error& e) {
      c.fail(std::string("embedded network: ") + e.what());
    }
    detail::check_conditions_body(c, c.require("conditions", T::object));
    c.require("path_count", T::number_unsigned);
    c.require("rank", T::number_unsigned);
    c.require("exact_match", T::boolean);
    for (const json& l : c.require("links", T::array)) {
      c.require(l, "link", T::string);
      c.rational(l.at("assigned"), "assigned");
      c.require(l, "identifiable", T::boolean);
      if (!l.contains("recovered")) c.fail("missing member 'recovered'");
      if (!l.at("recovered").is_null()) c.rational(l.at("recovered"), "recovered");
    }
  } else if (kind == schema::error) {
    c.require("kind", T::string);
    c.require("code", T::string);
    c.require("message", T::string);
    c.require("exit_code", T::number_unsigned);
  } else {
    c.fail("unknown schema '" + kind + "'");
  }
}

// ---------------------------------------------------------------------------
// DOT export

struct DotAnnotations {
  std::optional<CyclePairCertificate> certificate;
  std::string title;
};

// Monitors are boxes. With a certificate, c1 links are blue, c2 links red,
// the shared link vw is bold purple, and p1/p2 are dashed.
inline std::string to_dot(const Network& net, const DotAnnotations& notes = {}) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };

  std::set<Link> c1, c2, p1, p2;
  std::optional<Link> vw;
  if (notes.certificate) {
    const auto& c = *notes.certificate;
    for (const Link& l : c.c1.links()) c1.insert(l);
    for (const Link& l : c.c2.links()) c2.insert(l);
    for (const Link& l : c.p1.links()) p1.insert(l);
    for (const Link& l : c.p2.links()) p2.insert(l);
    vw = c.link();
  }

  std::string out = "graph tomolink {\n";
  if (!notes.title.empty()) out += "  label=" + quote(notes.title) + ";\n";
  for (NodeId x = 0; x < net.size(); ++x) {
    out += "  " + quote(net.name(x));
    if (net.is_monitor(x)) out += " [shape=box]";
    out += ";\n";
  }
  for (const Link& l : net.links()) {
    std::vector<std::string> attrs;
    if (vw && l == *vw) {
      attrs = {"color=purple", "penwidth=3", "label=\"vw\""};
    } else if (c1.count(l) && c2.count(l)) {
      attrs = {"color=\"blue:red\""};
    } else if (c1.count(l)) {
      attrs = {"color=blue", "label=\"C1\""};
    } else if (c2.count(l)) {
      attrs = {"color=red", "label=\"C2\""};
    }
    if (p1.count(l)) attrs.insert(attrs.end(), {"style=dashed", "label=\"P1\""});
    if (p2.count(l)) attrs.insert(attrs.end(), {"style=dashed", "label=\"P2\""});
    out += "  " + quote(net.name(l.u)) + " -- " + quote(net.name(l.v));
    if (!attrs.empty()) {
      out += " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) {
        out += (i ? ", " : "") + attrs[i];
      }
      out += "]";
    }
    out += ";\n";
  }
  return out + "}\n";
}

}  // namespace tomolink
