#include "spr/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spr/errors.hpp"

namespace spr::io {

namespace {

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

Json ext_to_json(const ExtLength& x) { return x.is_finite() ? Json(x.value()) : Json("inf"); }

Json rational_json(const Rational& r) { return r.to_string(); }

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(std::string("bad rational: ") + e.what());
    }
  }
  throw FormatError("rational must be an integer or a \"p/q\" string");
}

std::vector<Edge> edge_triples(const Json& edges, std::size_t n, bool strict) {
  if (!edges.is_array()) throw FormatError("'edges' must be an array");
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number_integer()) {
      throw FormatError("edge must be an integer triple [u, v, w]");
    }
    const auto u = e[0].get<std::int64_t>();
    const auto v = e[1].get<std::int64_t>();
    const auto w = e[2].get<std::int64_t>();
    if (u < 0 || v < 0 || static_cast<std::uint64_t>(u) >= n || static_cast<std::uint64_t>(v) >= n) {
      throw FormatError("edge endpoint out of range");
    }
    if (strict && u >= v) throw FormatError("edge triples need u < v");
    if (w < 1) throw FormatError("edge weights must be positive integers");
    Edge edge{static_cast<Vertex>(u), static_cast<Vertex>(v), w};
    if (strict && !out.empty() && !(out.back() < edge)) throw FormatError("edge triples must be sorted and distinct");
    out.push_back(edge);
  }
  return out;
}

Json edges_json(const WeightedGraph& g) {
  Json arr = Json::array();
  for (const Edge& e : g.edges()) arr.push_back(Json::array({e.u, e.v, e.w}));
  return arr;
}

WeightedGraph make_graph(std::size_t n, std::vector<Edge> edges) {
  try {
    return WeightedGraph(n, std::move(edges));
  } catch (const ArgumentError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Json graph_to_json(const WeightedGraph& g) {
  Json j;
  j["n"] = g.vertex_count();
  j["edges"] = edges_json(g);
  return j;
}

WeightedGraph graph_from_json(const Json& j) {
  const auto n = require<std::int64_t>(j, "n");
  if (n < 0) throw FormatError("'n' must be non-negative");
  if (!j.contains("edges")) throw FormatError("missing field 'edges'");
  return make_graph(static_cast<std::size_t>(n), edge_triples(j["edges"], static_cast<std::size_t>(n), true));
}

Json params_to_json(const InstanceParams& p) {
  Json j;
  j["k"] = p.k;
  j["log2_k"] = p.log2_k;
  j["M"] = p.M;
  j["S"] = p.S;
  j["L"] = rational_json(p.L);
  j["g"] = p.g;
  j["mode"] = std::string(to_string(p.mode));
  Json flags = Json::object();
  for (const auto& f : p.flags) flags[f.name] = f.value;
  j["flags"] = flags;
  return j;
}

InstanceParams params_from_json(const Json& j) {
  InstanceParams p;
  p.k = require<std::uint64_t>(j, "k");
  p.log2_k = j.contains("log2_k") ? require<double>(j, "log2_k") : (p.k > 0 ? std::log2(static_cast<double>(p.k)) : 0);
  p.M = require<Length>(j, "M");
  p.S = require<Length>(j, "S");
  if (!j.contains("L")) throw FormatError("missing field 'L'");
  p.L = rational_from(j["L"]);
  p.g = require<Length>(j, "g");
  try {
    p.mode = j.contains("mode") ? parse_param_mode(require<std::string>(j, "mode")) : ParamMode::custom;
  } catch (const ArgumentError& e) {
    throw FormatError(e.what());
  }
  if (p.M < 1) throw FormatError("M must be >= 1");
  evaluate_flags(p);
  return p;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["params"] = params_to_json(inst.params());
  j["core"] = graph_to_json(inst.core());
  j["pendant_weight"] = inst.params().M;
  if (!inst.full_terminal()) {
    Json att = Json::array();
    for (Vertex v : inst.attachments()) att.push_back(v);
    j["attachments"] = att;
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("instance must be a JSON object");
  if (!j.contains("params") || !j.contains("core")) throw FormatError("instance needs 'params' and 'core'");
  InstanceParams params = params_from_json(j["params"]);
  WeightedGraph core = graph_from_json(j["core"]);
  const Length pendant = j.contains("pendant_weight") ? require<Length>(j, "pendant_weight") : params.M;
  if (pendant < 1) throw FormatError("pendant_weight must be positive");

  std::vector<Vertex> attachments;
  if (j.contains("attachments")) {
    for (const auto& a : j["attachments"]) {
      if (!a.is_number_integer()) throw FormatError("attachments must be integers");
      const auto v = a.get<std::int64_t>();
      if (v < 0 || static_cast<std::uint64_t>(v) >= core.vertex_count()) throw FormatError("attachment out of range");
      attachments.push_back(static_cast<Vertex>(v));
    }
  } else {
    for (std::size_t v = 0; v < core.vertex_count(); ++v) attachments.push_back(static_cast<Vertex>(v));
  }

  const std::size_t n = core.vertex_count();
  std::vector<Edge> full(core.edges().begin(), core.edges().end());
  for (std::size_t i = 0; i < attachments.size(); ++i) {
    full.push_back({attachments[i], static_cast<Vertex>(n + i), pendant});
  }
  WeightedGraph full_graph = make_graph(n + attachments.size(), std::move(full));
  return Instance::from_parts(std::move(core), std::move(full_graph), std::move(attachments), std::move(params));
}

Json solution_to_json(const SprSolution& sol, const std::optional<std::string>& instance_path) {
  Json j;
  if (instance_path) {
    j["instance"] = *instance_path;
  } else {
    j["instance"] = instance_to_json(*sol.host);
  }
  j["edges"] = edges_json(sol.h);
  if (sol.clusters) j["clusters"] = *sol.clusters;
  return j;
}

SprSolution solution_from_json(const Json& j, const std::filesystem::path& base_dir,
                               std::shared_ptr<const Instance> known_instance) {
  if (!j.is_object()) throw FormatError("solution must be a JSON object");
  SprSolution sol;
  if (known_instance) {
    sol.host = std::move(known_instance);
  } else {
    if (!j.contains("instance")) throw FormatError("missing field 'instance'");
    const Json& ref = j["instance"];
    if (ref.is_string()) {
      std::filesystem::path p = ref.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      sol.host = load_instance(p);
    } else {
      sol.host = std::make_shared<const Instance>(instance_from_json(ref));
    }
  }
  const std::size_t k = sol.host->terminal_count();
  if (!j.contains("edges")) throw FormatError("missing field 'edges'");
  sol.h = make_graph(k, edge_triples(j["edges"], k, false));
  if (j.contains("clusters")) {
    std::vector<std::size_t> clusters;
    for (const auto& c : j["clusters"]) {
      if (!c.is_number_unsigned()) throw FormatError("clusters must be non-negative integers");
      clusters.push_back(c.get<std::size_t>());
    }
    sol.clusters = std::move(clusters);
  }
  return sol;
}

Json report_to_json(const CheckReport& report) {
  Json j;
  j["ok"] = report.ok();
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["detail"] = c.detail;
    checks.push_back(item);
  }
  j["checks"] = checks;
  return j;
}

Json stretch_to_json(const StretchReport& report) {
  Json j;
  j["max_ratio"] = rational_json(report.max_ratio);
  j["max_ratio_decimal"] = report.max_ratio.to_decimal();
  j["witness"] = Json::array({report.witness.first, report.witness.second});
  Json pairs = Json::array();
  for (const auto& p : report.per_pair) {
    pairs.push_back(Json::array({p.i, p.j, ext_to_json(p.dist_g), ext_to_json(p.dist_h), rational_json(p.ratio)}));
  }
  j["pairs"] = pairs;
  return j;
}

Json path_to_json(const Path& p) {
  Json j;
  j["vertices"] = std::vector<Vertex>(p.vertices().begin(), p.vertices().end());
  j["length"] = p.length();
  return j;
}

Json cov_result_to_json(const CovResult& c) {
  Json j;
  j["value"] = ext_to_json(c.value);
  j["witness"] = c.witness;
  j["reduction"] = c.reduction == CoverReduction::interval ? "interval" : "set-cover";
  return j;
}

Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["case"] = std::string(to_string(cert.kind));
  j["witness_terminals"] = Json::array({cert.witness_terminals.first, cert.witness_terminals.second});
  j["ratio_bound"] = rational_json(cert.ratio_bound);
  j["exact_ratio"] = rational_json(cert.exact_ratio);
  j["length_bound"] = rational_json(cert.length_bound);
  j["girth"] = ext_to_json(cert.girth);
  Json pre = Json::object();
  for (const auto& f : cert.preconditions) pre[f.name] = f.value;
  j["preconditions"] = pre;
  if (cert.kind != CertificateCase::preconditions_unmet) {
    j["p"] = path_to_json(cert.p);
    j["p_prime_length"] = cert.p_prime_length;
    j["cov"] = ext_to_json(cert.cov);
    if (!cert.q_h.empty()) {
      j["q_h"] = path_to_json(cert.q_h);
      j["r"] = path_to_json(cert.r);
    }
  }
  j["note"] = cert.note;
  return j;
}

Json cov_distribution_to_json(const CovDistribution& d) {
  Json j;
  j["trials"] = d.trials;
  j["at_least_two"] = d.at_least_two;
  j["uncovered"] = d.uncovered;
  j["fraction_at_least_two"] = d.fraction_at_least_two;
  j["uncovered_fraction"] = d.uncovered_fraction;
  j["mean_finite_cov"] = d.mean_finite_cov;
  j["window_count"] = d.window_count;
  j["oriented_path_count"] = d.oriented_path_count;
  j["analytic_bound"] = d.analytic_bound;
  j["paper_form_bound"] = d.paper_form_bound;
  j["sigma"] = d.sigma;
  return j;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << dump(j);
}

std::shared_ptr<const Instance> load_instance(const std::filesystem::path& path) {
  return std::make_shared<const Instance>(instance_from_json(read_json(path)));
}

SprSolution load_solution(const std::filesystem::path& path, std::shared_ptr<const Instance> known_instance) {
  return solution_from_json(read_json(path), path.parent_path(), std::move(known_instance));
}

}  // namespace spr::io
