#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spr/certifier.hpp"
#include "spr/cli.hpp"
#include "spr/cover.hpp"
#include "spr/errors.hpp"
#include "spr/io.hpp"

namespace py = pybind11;
using namespace spr;

namespace {

// pybind11 holders cannot be shared_ptr<const T>; instances are never
// mutated through this handle.
using InstancePtr = std::shared_ptr<Instance>;

InstancePtr to_handle(std::shared_ptr<const Instance> p) { return std::const_pointer_cast<Instance>(std::move(p)); }

cli::InstanceSpec make_spec(const std::string& mode, std::optional<Length> M, std::optional<Length> S,
                            std::optional<std::string> L, std::optional<Length> g,
                            std::optional<std::vector<Vertex>> terminals) {
  cli::InstanceSpec spec;
  spec.mode = parse_param_mode(mode);
  spec.overrides.M = M;
  spec.overrides.S = S;
  if (L) spec.overrides.L = Rational::parse(*L);
  spec.overrides.g = g;
  spec.terminals = std::move(terminals);
  return spec;
}

std::optional<Length> finite_or_none(ExtLength x) {
  if (x.is_infinite()) return std::nullopt;
  return x.value();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steiner point removal lower-bound toolkit";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<HandshakeError>(m, "HandshakeError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<DisconnectedPairError>(m, "DisconnectedPairError", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  m.def("cage_names", [] {
    std::vector<std::string> names;
    for (const auto& c : cage_catalog()) names.push_back(c.name);
    return names;
  });
  m.def("cage_graph_json", [](const std::string& name) { return io::dump(io::graph_to_json(cage_graph(name))); });
  m.def("random_core_json", [](std::size_t n, Length girth, std::uint64_t seed) {
    return io::dump(io::graph_to_json(generate_cubic_high_girth(n, girth, seed, GenerationStrategy::random_repair)));
  });
  m.def("girth", [](const std::string& graph_json) {
    return finite_or_none(girth(io::graph_from_json(io::Json::parse(graph_json))));
  });

  py::class_<Instance, InstancePtr>(m, "Instance")
      .def_static(
          "from_core",
          [](const std::string& graph_json, const std::string& mode, std::optional<Length> M, std::optional<Length> S,
             std::optional<std::string> L, std::optional<Length> g, std::optional<std::vector<Vertex>> terminals) {
            const auto core = io::graph_from_json(io::Json::parse(graph_json));
            return to_handle(cli::make_instance(core, make_spec(mode, M, S, std::move(L), g, std::move(terminals))));
          },
          py::arg("graph_json"), py::arg("mode") = "custom", py::arg("M") = py::none(), py::arg("S") = py::none(),
          py::arg("L") = py::none(), py::arg("g") = py::none(), py::arg("terminals") = py::none())
      .def_static("from_json",
                  [](const std::string& text) {
                    return std::make_shared<Instance>(io::instance_from_json(io::Json::parse(text)));
                  })
      .def("to_json", [](const Instance& inst) { return io::dump(io::instance_to_json(inst)); })
      .def("validate", [](const Instance& inst) { return io::dump(io::report_to_json(validate_instance(inst))); })
      .def_property_readonly("terminal_count", &Instance::terminal_count)
      .def_property_readonly("core_vertex_count", [](const Instance& inst) { return inst.core().vertex_count(); })
      .def_property_readonly("core_girth", [](const Instance& inst) { return finite_or_none(inst.core_girth()); })
      .def("terminal_distance", [](const Instance& inst, std::size_t i, std::size_t j) {
        if (i >= inst.terminal_count() || j >= inst.terminal_count()) throw py::index_error("terminal out of range");
        return finite_or_none(inst.terminal_distance(i, j));
      })
      .def("count_length_s_paths",
           [](const Instance& inst, std::size_t s) { return count_length_s_paths(inst.core(), s); });

  py::class_<SprSolution>(m, "Solution")
      .def_static(
          "solve",
          [](const InstancePtr& inst, const std::string& method, std::size_t budget) {
            py::gil_scoped_release release;
            return solve(inst, method, budget);
          },
          py::arg("instance"), py::arg("method") = "voronoi", py::arg("budget") = 100000)
      .def_static("from_json",
                  [](const std::string& text, const InstancePtr& inst) {
                    return io::solution_from_json(io::Json::parse(text), ".", inst);
                  },
                  py::arg("text"), py::arg("instance") = nullptr)
      .def("to_json", [](const SprSolution& sol) { return io::dump(io::solution_to_json(sol, std::nullopt)); })
      .def_property_readonly("instance", [](const SprSolution& sol) { return to_handle(sol.host); })
      .def_property_readonly("edge_count", [](const SprSolution& sol) { return sol.h.edge_count(); })
      .def_property_readonly("clusters", [](const SprSolution& sol) { return sol.clusters; })
      .def(
          "validate",
          [](const SprSolution& sol, bool ignore_edge_budget) {
            ValidationOptions opts;
            opts.enforce_edge_budget = !ignore_edge_budget;
            return io::dump(io::report_to_json(validate_solution(sol, opts)));
          },
          py::arg("ignore_edge_budget") = false)
      .def(
          "stretch",
          [](const SprSolution& sol, unsigned threads) {
            StretchReport r;
            {
              py::gil_scoped_release release;
              r = stretch(sol, threads);
            }
            return io::dump(io::stretch_to_json(r));
          },
          py::arg("threads") = 0)
      .def(
          "certify",
          [](const SprSolution& sol, std::uint64_t seed, std::uint64_t budget, bool ignore_edge_budget) {
            CertifyOptions opts;
            opts.seed = seed;
            opts.path_budget = budget;
            opts.validation.enforce_edge_budget = !ignore_edge_budget;
            std::optional<Certificate> cert;
            {
              py::gil_scoped_release release;
              cert = certify(*sol.host, sol, opts);
            }
            return io::dump(io::certificate_to_json(*cert));
          },
          py::arg("seed") = 0, py::arg("budget") = 200000, py::arg("ignore_edge_budget") = false)
      .def(
          "cov_distribution",
          [](const SprSolution& sol, std::size_t s, std::size_t trials, std::uint64_t seed, unsigned threads) {
            std::optional<CovDistribution> d;
            {
              py::gil_scoped_release release;
              d = estimate_cov_distribution(*sol.host, build_cover_family(sol), s, trials, seed, threads);
            }
            return io::dump(io::cov_distribution_to_json(*d));
          },
          py::arg("s"), py::arg("trials") = 10000, py::arg("seed") = 0, py::arg("threads") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
