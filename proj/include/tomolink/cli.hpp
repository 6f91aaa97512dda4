#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tomolink/documents.hpp"

namespace tomolink {

enum class Subcommand { Check, Paths, Transform, Identify, Construct, Classify, Simulate };

struct CommandRequest {
  Subcommand command = Subcommand::Check;
  std::string input;
  std::string output;        // empty: standard output
  std::string link;          // construct, classify
  std::string measurements;  // identify
  std::string dot;
  std::string csv;           // transform
  std::size_t cap = kDefaultPathCap;
  std::size_t ceiling = kDefaultCeiling;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;  // simulate
  std::size_t extra_links = 0;
  bool brute_force = false;  // check
};

struct ParseOutcome {
  std::optional<CommandRequest> request;
  int status = 0;        // meaningful when request is empty
  std::string message;   // help text or usage error
};

namespace detail {

inline std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value == 0) {
    throw Error(ErrorKind::MalformedInput,
                what + " must be a positive integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace detail

// `env_ceiling` is the value of TOMOLINK_CEILING, if set. It replaces the
// built-in default and is itself overridden by --ceiling.
inline ParseOutcome parse_command_line(std::vector<std::string> args,
                                       const char* env_ceiling = nullptr) {
  CLI::App app{"Identifiability of additive link metrics with two monitors",
               "tomolink"};
  app.require_subcommand(1);
  app.fallthrough();

  CommandRequest req;
  std::string ceiling_text;
  app.add_option("-i,--input", req.input, "graph document (JSON)");
  app.add_option("-o,--output", req.output, "output document (default stdout)");
  app.add_option("--link", req.link, "link named u-v");
  app.add_option("--cap", req.cap, "maximum number of enumerated paths")
      ->check(CLI::PositiveNumber);
  app.add_option("--ceiling", ceiling_text,
                 "search ceiling for cycle/path searches "
                 "(default: TOMOLINK_CEILING or 200000)");
  app.add_option("--seed", req.seed, "random seed");
  app.add_option("--nodes", req.nodes, "node count for simulate");
  app.add_option("--extra-links", req.extra_links,
                 "links added to the random spanning tree");
  app.add_option("--dot", req.dot, "also write a DOT rendering here");
  app.add_option("--csv", req.csv, "transform: also write the matrix as CSV");
  app.add_option("--measurements", req.measurements,
                 "identify: JSON array of path measurements");

  struct Entry {
    Subcommand command;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {Subcommand::Check, "check", "report both connectivity conditions"},
      {Subcommand::Paths, "paths", "list simple monitor-to-monitor paths"},
      {Subcommand::Transform, "transform", "block-transformed measurement matrix"},
      {Subcommand::Identify, "identify", "rank, per-link identifiability, recovery"},
      {Subcommand::Construct, "construct", "cycle-pair certificate for --link"},
      {Subcommand::Classify, "classify", "border-link classification of --link"},
      {Subcommand::Simulate, "simulate", "random network round trip"},
  };
  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  for (const Entry& e : entries) subs.emplace_back(app.add_subcommand(e.name, e.help), e.command);
  CLI::App* check = subs.front().first;
  check->add_flag("--brute-force", req.brute_force,
                  "use deletion oracles instead of the characterization");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, 0, app.help()};
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, 1, std::string(e.what()) + "\n" + app.help()};
  }
  for (const auto& [sub, command] : subs) {
    if (sub->parsed()) req.command = command;
  }

  try {
    if (!ceiling_text.empty()) {
      req.ceiling = detail::parse_count(ceiling_text, "--ceiling");
    } else if (env_ceiling && *env_ceiling) {
      req.ceiling = detail::parse_count(env_ceiling, "TOMOLINK_CEILING");
    }
    const bool needs_input = req.command != Subcommand::Simulate;
    if (needs_input && req.input.empty()) {
      throw Error(ErrorKind::MalformedInput, "--input is required");
    }
    if (!needs_input && !req.input.empty()) {
      throw Error(ErrorKind::MalformedInput, "simulate takes no --input");
    }
    if ((req.command == Subcommand::Construct ||
         req.command == Subcommand::Classify) && req.link.empty()) {
      throw Error(ErrorKind::MalformedInput, "--link is required");
    }
    if (req.command == Subcommand::Simulate && req.nodes == 0) {
      throw Error(ErrorKind::MalformedInput, "--nodes is required");
    }
    if (!req.csv.empty() && req.command != Subcommand::Transform) {
      throw Error(ErrorKind::MalformedInput, "--csv applies to transform only");
    }
    if (!req.measurements.empty() && req.command != Subcommand::Identify) {
      throw Error(ErrorKind::MalformedInput,
                  "--measurements applies to identify only");
    }
  } catch (const Error& e) {
    return {std::nullopt, exit_code(e.kind()), e.what()};
  }
  return {req, 0, {}};
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Write to a sibling temporary, then rename over the target.
inline void write_atomically(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw Error(ErrorKind::PreconditionFailed, "cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw Error(ErrorKind::PreconditionFailed, "cannot write " + path);
  }
}

inline std::vector<Rational> parse_measurements(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, e.what());
  }
  if (doc.is_object() && doc.contains("measurements")) doc = doc.at("measurements");
  if (!doc.is_array()) {
    throw Error(ErrorKind::MalformedInput, "measurements must be a JSON array");
  }
  std::vector<Rational> out;
  for (const json& x : doc) {
    if (x.is_string()) {
      out.push_back(parse_rational(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      out.push_back(parse_rational(std::to_string(x.get<long long>())));
    } else {
      throw Error(ErrorKind::MalformedInput,
                  "measurements are \"p/q\" strings or integers");
    }
  }
  return out;
}

inline Link resolve_link(const Network& net, const std::string& text) {
  if (auto l = net.find_link(text)) {
    if (net.link_name(*l) == text) return *l;
    throw Error(ErrorKind::PreconditionFailed,
                "link '" + text + "' must be written endpoint-sorted as '" +
                    net.link_name(*l) + "'");
  }
  throw Error(ErrorKind::PreconditionFailed, "no link named '" + text + "'");
}

struct Outputs {
  json document;
  std::optional<std::string> dot;
  std::optional<std::string> csv;
};

inline Outputs execute(const CommandRequest& req) {
  Outputs out;
  SearchLimits limits;
  limits.ceiling = req.ceiling;

  if (req.command == Subcommand::Simulate) {
    const Network net = random_network(req.nodes, req.extra_links, req.seed);
    const RoundTripReport report = round_trip(net, req.seed, req.cap);
    out.document = roundtrip_document(
        net, {req.nodes, req.extra_links, req.seed}, report);
    if (!req.dot.empty()) out.dot = to_dot(net, {std::nullopt, report.digest});
    return out;
  }

  const Network net = parse_network(read_file(req.input));
  DotAnnotations notes;
  switch (req.command) {
    case Subcommand::Check: {
      const auto method = req.brute_force ? ConditionMethod::BruteForce
                                          : ConditionMethod::Characterization;
      out.document = conditions_document(net, check_conditions(net, method));
      break;
    }
    case Subcommand::Paths:
      out.document = paths_document(net, enumerate_simple_paths(net, req.cap));
      break;
    case Subcommand::Transform: {
      const MeasurementMatrix m = build_measurement_matrix(net, req.cap);
      const TransformedMatrix t = lemma1_transform(m);
      out.document = transform_document(m, t);
      if (!req.csv.empty()) out.csv = to_csv(t.matrix, m.column_labels);
      break;
    }
    case Subcommand::Identify: {
      std::optional<std::vector<Rational>> values;
      if (!req.measurements.empty()) {
        values = parse_measurements(read_file(req.measurements));
      }
      const MeasurementMatrix m = build_measurement_matrix(net, req.cap);
      IdentifiabilityReport report = identify(net, m);
      if (values) report.recovered = recover_metrics(m, *values);
      out.document = identifiability_document(net, report);
      break;
    }
    case Subcommand::Construct: {
      const Link link = resolve_link(net, req.link);
      const CyclePairCertificate cert = find_cycle_pair(net, link, limits);
      out.document = certificate_document(net, cert);
      notes.certificate = cert;
      break;
    }
    case Subcommand::Classify: {
      const Link link = resolve_link(net, req.link);
      const BorderClassification b = classify_link(net, link, limits);
      out.document = classification_document(net, link, b);
      if (b.is_border()) {
        const Cycle face = find_monitor_face(net, link, limits);
        const MonitorPaths paths =
            find_disjoint_monitor_paths(net, face, link.u, link.v, limits);
        out.document["monitor_face"] = node_list(net, face.nodes);
        out.document["monitor_paths"] = {
            {"from_m1", node_list(net, paths.from_m1.nodes)},
            {"from_m2", node_list(net, paths.from_m2.nodes)},
            {"swapped", paths.swapped}};
      }
      notes.certificate = b.certificate;
      break;
    }
    case Subcommand::Simulate:
      break;
  }
  if (!req.dot.empty()) out.dot = to_dot(net, notes);
  return out;
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_atomically(path, text);
  }
}

}  // namespace detail

// Runs one request. The report (or, on failure, an error document) goes to
// --output or `out`; a one-line diagnostic for failures goes to `err`.
inline int run(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  try {
    const detail::Outputs result = detail::execute(req);
    validate_document(result.document);
    if (result.dot) detail::write_atomically(req.dot, *result.dot);
    if (result.csv) detail::write_atomically(req.csv, *result.csv);
    detail::emit(req.output, result.document.dump(2) + "\n", out);
    return 0;
  } catch (const Error& e) {
    err << "tomolink: " << to_string(e.kind());
    if (e.code() != ValidationCode::None) err << " (" << to_string(e.code()) << ")";
    err << ": " << e.what() << "\n";
    try {
      detail::emit(req.output, error_document(e).dump(2) + "\n", out);
    } catch (const Error&) {
    }
    return exit_code(e.kind());
  }
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out,
                      std::ostream& err, const char* env_ceiling) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  const ParseOutcome parsed = parse_command_line(std::move(args), env_ceiling);
  if (!parsed.request) {
    (parsed.status == 0 ? out : err) << parsed.message
                                     << (parsed.message.ends_with('\n') ? "" : "\n");
    return parsed.status;
  }
  return run(*parsed.request, out, err);
}

}  // namespace tomolink
