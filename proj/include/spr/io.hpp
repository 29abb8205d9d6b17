#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "spr/certifier.hpp"
#include "spr/cover.hpp"
#include "spr/graph.hpp"
#include "spr/instance.hpp"
#include "spr/report.hpp"
#include "spr/solution.hpp"

namespace spr::io {

using Json = nlohmann::ordered_json;

// {"n": N, "edges": [[u, v, w], ...]} with u < v and triples sorted.
Json graph_to_json(const WeightedGraph& g);
// Strict reader: rejects unsorted triples or u >= v so that
// dump(graph_to_json(graph_from_json(x))) reproduces x byte for byte.
WeightedGraph graph_from_json(const Json& j);

Json params_to_json(const InstanceParams& p);
InstanceParams params_from_json(const Json& j);

// {"params": {...}, "core": <graph>, "pendant_weight": M[, "attachments": [...]]};
// terminal i is vertex n + i. "attachments" is omitted for full-terminal
// instances.
Json instance_to_json(const Instance& inst);
// Reassembles without validation.
Instance instance_from_json(const Json& j);

// {"instance": <path string or inline instance>, "edges": [[i, j, w], ...]
//  [, "clusters": [...]]} over terminal indices.
Json solution_to_json(const SprSolution& sol, const std::optional<std::string>& instance_path);
// A string "instance" is resolved against base_dir when relative.
SprSolution solution_from_json(const Json& j, const std::filesystem::path& base_dir,
                               std::shared_ptr<const Instance> known_instance = nullptr);

Json report_to_json(const CheckReport& report);
Json stretch_to_json(const StretchReport& report);
Json path_to_json(const Path& p);
Json certificate_to_json(const Certificate& cert);
Json cov_distribution_to_json(const CovDistribution& d);
Json cov_result_to_json(const CovResult& c);

Json read_json(const std::filesystem::path& path);
// Two-space indented dump with trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

std::shared_ptr<const Instance> load_instance(const std::filesystem::path& path);
SprSolution load_solution(const std::filesystem::path& path, std::shared_ptr<const Instance> known_instance = nullptr);

}  // namespace spr::io
