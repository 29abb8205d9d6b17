#include "spr/cli.hpp"

#include <CLI11.hpp>
#include <toml.hpp>

#include <fstream>
#include <sstream>

#include "spr/cover.hpp"
#include "spr/errors.hpp"
#include "spr/io.hpp"
#include "spr/solution.hpp"

namespace spr::cli {

namespace fs = std::filesystem;
using io::Json;

std::shared_ptr<const Instance> make_instance(const WeightedGraph& core, const InstanceSpec& spec) {
  std::vector<Vertex> attachments;
  if (spec.terminals) {
    attachments = *spec.terminals;
  } else {
    for (std::size_t v = 0; v < core.vertex_count(); ++v) attachments.push_back(static_cast<Vertex>(v));
  }
  const std::uint64_t k = attachments.size();

  InstanceParams params;
  if (spec.mode == ParamMode::paper) {
    params = derive_params(k, ParamMode::paper, spec.overrides);
  } else {
    ParamOverrides o = spec.overrides;
    if (!o.M) o.M = 1;
    if (!o.S) o.S = 1;
    if (!o.L) o.L = Rational(2 * *o.M + 1);
    if (!o.g) {
      const ExtLength gc = girth(core);
      o.g = gc.is_finite() ? std::max<Length>(3, gc.value()) : std::max<Length>(3, core.vertex_count() + 1);
    }
    params = derive_params(k, ParamMode::custom, o);
  }
  if (spec.terminals) {
    return std::make_shared<const Instance>(build_subterminal_instance(core, std::move(attachments), params));
  }
  return std::make_shared<const Instance>(build_instance(core, params));
}

namespace {

std::optional<Rational> toml_rational(const toml::node* node, const std::string& where) {
  if (node == nullptr) return std::nullopt;
  if (auto i = node->value<std::int64_t>(); i && node->is_integer()) return Rational(*i);
  if (auto s = node->value<std::string>()) return Rational::parse(*s);
  throw FormatError(where + ": L must be an integer or a \"p/q\" string");
}

std::optional<Length> toml_int(const toml::table& t, const char* key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  if (!node->is_integer()) throw FormatError(std::string("'") + key + "' must be an integer");
  return node->value<std::int64_t>();
}

// Gnuplot script comparing certified bounds with measured stretch per row.
void write_plot_script(const fs::path& script, const std::string& csv) {
  std::ofstream f(script, std::ios::binary);
  if (!f) throw FormatError("cannot write " + script.string());
  f << "set datafile separator ','\n"
    << "set key top left\n"
    << "set style data histograms\n"
    << "set style histogram clustered\n"
    << "set style fill solid 0.8\n"
    << "set xtics rotate by -45\n"
    << "set ylabel 'ratio'\n"
    << "csv = '" << csv << "'\n"
    << "plot csv every ::1 using 10:xtic(stringcolumn(1).'/'.stringcolumn(7)) title 'ratio bound', \\\n"
    << "     csv every ::1 using 11 title 'exact ratio', \\\n"
    << "     csv every ::1 using 8 title 'stretch'\n";
}

}  // namespace

SweepConfig load_sweep_config(const fs::path& path) {
  toml::table root;
  try {
    root = toml::parse_file(path.string());
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << path.string() << ": " << e.description();
    throw FormatError(msg.str());
  }
  SweepConfig cfg;
  if (auto v = toml_int(root, "seed")) cfg.options.seed = static_cast<std::uint64_t>(*v);
  if (auto v = toml_int(root, "path_budget")) cfg.options.path_budget = static_cast<std::uint64_t>(*v);
  if (auto v = toml_int(root, "brute_force_budget")) cfg.options.brute_force_budget = static_cast<std::size_t>(*v);
  if (const toml::array* solvers = root["solvers"].as_array()) {
    for (const auto& s : *solvers) {
      auto name = s.value<std::string>();
      if (!name) throw FormatError("solvers must be strings");
      cfg.solvers.push_back(*name);
    }
  } else {
    cfg.solvers = {"voronoi"};
  }

  const toml::array* items = root["instance"].as_array();
  if (items == nullptr) return cfg;
  std::size_t index = 0;
  for (const auto& node : *items) {
    const toml::table* t = node.as_table();
    if (t == nullptr) throw FormatError("[[instance]] entries must be tables");
    const std::string fallback = "instance" + std::to_string(index++);
    const std::string name = t->get("name") ? t->get("name")->value_or(fallback) : fallback;

    if (const toml::node* file = t->get("file")) {
      fs::path p = file->value_or(std::string{});
      if (p.is_relative()) p = path.parent_path() / p;
      cfg.instances.push_back({name, io::load_instance(p)});
      continue;
    }

    WeightedGraph core;
    if (const toml::node* cage = t->get("cage")) {
      core = cage_graph(cage->value_or(std::string{}));
    } else if (auto n = toml_int(*t, "random")) {
      const auto g = toml_int(*t, "girth");
      if (!g) throw FormatError(name + ": random instances need 'girth'");
      const auto seed = toml_int(*t, "seed").value_or(0);
      core = generate_cubic_high_girth(static_cast<std::size_t>(*n), *g, static_cast<std::uint64_t>(seed),
                                       GenerationStrategy::random_repair);
    } else {
      throw FormatError(name + ": need one of 'cage', 'random' or 'file'");
    }

    InstanceSpec spec;
    if (const toml::node* mode = t->get("mode")) spec.mode = parse_param_mode(mode->value_or(std::string{}));
    spec.overrides.M = toml_int(*t, "M");
    spec.overrides.S = toml_int(*t, "S");
    spec.overrides.g = toml_int(*t, "g");
    spec.overrides.L = toml_rational(t->get("L"), name);
    if (const toml::array* terms = (*t)["terminals"].as_array()) {
      std::vector<Vertex> vs;
      for (const auto& v : *terms) vs.push_back(static_cast<Vertex>(v.value_or<std::int64_t>(-1)));
      spec.terminals = std::move(vs);
    }
    cfg.instances.push_back({name, make_instance(core, spec)});
  }
  return cfg;
}

namespace {

struct Common {
  unsigned threads = 0;
};

void emit(const Json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << io::dump(j);
  } else {
    io::write_json(out_path, j);
  }
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> vs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      vs.push_back(static_cast<Vertex>(v));
    } catch (const std::logic_error&) {
      throw ArgumentError("bad vertex in --terminals: '" + item + "'");
    }
  }
  return vs;
}

std::string reference_for(const fs::path& instance_path, const std::string& out_path) {
  const fs::path base = fs::absolute(out_path).parent_path();
  return fs::proximate(fs::absolute(instance_path), base).generic_string();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steiner point removal lower-bound toolkit", "spr-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "spr-lab 0.1.0");

  Common common;
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "Worker threads (0: SPR_LAB_THREADS or 1)");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Build an instance from a cage, a random cubic graph or a core file");
  std::string gen_cage, gen_core, gen_out, gen_mode = "custom", gen_terminals, gen_L;
  std::size_t gen_random = 0, gen_retry = 0;
  std::optional<Length> gen_M, gen_S, gen_g, gen_girth;
  std::uint64_t gen_seed = 0;
  auto* src_cage = gen->add_option("--cage", gen_cage, "Catalog cage name");
  auto* src_random = gen->add_option("--random", gen_random, "Random cubic graph on N vertices");
  auto* src_core = gen->add_option("--core", gen_core, "Core graph JSON file");
  src_cage->excludes(src_random)->excludes(src_core);
  src_random->excludes(src_core);
  gen->add_option("--girth", gen_girth, "Girth target for --random (default: g)");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--retry-budget", gen_retry, "Edge-switch attempts for --random (0: 2000n)");
  gen->add_option("--mode", gen_mode, "paper or custom")->check(CLI::IsMember({"paper", "custom"}));
  gen->add_option("--M", gen_M, "Pendant weight");
  gen->add_option("--S", gen_S, "Block length");
  gen->add_option("--L", gen_L, "Short-edge threshold (p or p/q)");
  gen->add_option("--g", gen_g, "Required core girth");
  gen->add_option("--terminals", gen_terminals, "Comma-separated attachment vertices");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // validate
  auto* val = app.add_subcommand("validate", "Check an instance, and optionally a solution");
  std::string val_instance, val_solution;
  bool val_ignore_budget = false;
  val->add_option("--instance", val_instance, "Instance file")->required();
  val->add_option("--solution", val_solution, "Solution file");
  val->add_flag("--ignore-edge-budget", val_ignore_budget, "Skip the |E(h)| <= |E(G)| check");

  // solve
  auto* sol_cmd = app.add_subcommand("solve", "Produce a candidate solution");
  std::string solve_instance, solve_method = "voronoi", solve_out;
  std::size_t solve_budget = 1'000'000;
  sol_cmd->add_option("--instance", solve_instance, "Instance file")->required();
  sol_cmd->add_option("--method", solve_method, "voronoi, brute, mst or metric")
      ->check(CLI::IsMember({"voronoi", "brute", "mst", "metric"}));
  sol_cmd->add_option("--budget", solve_budget, "Assignment budget for brute");
  sol_cmd->add_option("--out", solve_out, "Output file (default stdout, instance inlined)");

  // eval
  auto* eval = app.add_subcommand("eval", "Validate a solution and compute its exact stretch");
  std::string eval_solution, eval_instance, eval_out;
  bool eval_ignore_budget = false;
  eval->add_option("--solution", eval_solution, "Solution file")->required();
  eval->add_option("--instance", eval_instance, "Instance file overriding the solution's reference");
  eval->add_flag("--ignore-edge-budget", eval_ignore_budget, "Skip the |E(h)| <= |E(G)| check");
  eval->add_option("--out", eval_out, "Output file (default stdout)");
  add_threads(eval);

  // cover
  auto* cover_cmd = app.add_subcommand("cover", "Monte Carlo cover experiment on a solution's short-edge family");
  std::string cover_instance, cover_solution, cover_out;
  std::size_t cover_s = 0, cover_trials = 10000;
  std::optional<std::size_t> cover_m;
  std::uint64_t cover_seed = 0, cover_budget = 200000;
  cover_cmd->add_option("--instance", cover_instance, "Instance file");
  cover_cmd->add_option("--solution", cover_solution, "Solution file")->required();
  cover_cmd->add_option("--s", cover_s, "Sampled path length")->required()->check(CLI::PositiveNumber);
  cover_cmd->add_option("--trials", cover_trials, "Monte Carlo trials");
  cover_cmd->add_option("--seed", cover_seed, "Master seed");
  cover_cmd->add_option("--m", cover_m, "Witness path length (default M)");
  cover_cmd->add_option("--budget", cover_budget, "Path budget for the witness search");
  cover_cmd->add_option("--out", cover_out, "Output file (default stdout)");
  add_threads(cover_cmd);

  // certify
  auto* cert_cmd = app.add_subcommand("certify", "Replay the case analysis and emit a certificate");
  std::string cert_instance, cert_solution, cert_out;
  std::uint64_t cert_seed = 0, cert_budget = 200000;
  bool cert_ignore_budget = false;
  cert_cmd->add_option("--instance", cert_instance, "Instance file");
  cert_cmd->add_option("--solution", cert_solution, "Solution file")->required();
  cert_cmd->add_option("--seed", cert_seed, "Seed for sampled witness search");
  cert_cmd->add_option("--budget", cert_budget, "Path budget for the witness search");
  cert_cmd->add_flag("--ignore-edge-budget", cert_ignore_budget, "Skip the |E(h)| <= |E(G)| check");
  cert_cmd->add_option("--out", cert_out, "Output file (default stdout)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every solver on every configured instance");
  std::string sweep_config, sweep_out;
  bool sweep_timing = false;
  sweep_cmd->add_option("--config", sweep_config, "TOML sweep description")->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output (default stdout)");
  std::string sweep_plot;
  sweep_cmd->add_flag("--timing", sweep_timing, "Fill runtime_ms (breaks byte-identical reruns)");
  sweep_cmd->add_option("--plot", sweep_plot, "Also write a gnuplot script reading the CSV")->needs("--out");
  add_threads(sweep_cmd);

  // count-paths
  auto* count_cmd = app.add_subcommand("count-paths", "Count oriented simple length-s paths in the core");
  std::string count_instance;
  std::size_t count_s = 0;
  count_cmd->add_option("--instance", count_instance, "Instance file")->required();
  count_cmd->add_option("--s", count_s, "Path length")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage{"spr-lab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "spr-lab: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  auto load_pair = [](const std::string& instance_path, const std::string& solution_path) {
    std::shared_ptr<const Instance> inst;
    if (!instance_path.empty()) inst = io::load_instance(instance_path);
    SprSolution sol = io::load_solution(solution_path, inst);
    return sol;
  };

  try {
    if (gen->parsed()) {
      if (gen_cage.empty() && gen_random == 0 && gen_core.empty()) {
        err << "spr-lab gen: one of --cage, --random or --core is required\n\n" << gen->help();
        return kExitUsage;
      }
      InstanceSpec spec;
      spec.mode = parse_param_mode(gen_mode);
      spec.overrides.M = gen_M;
      spec.overrides.S = gen_S;
      spec.overrides.g = gen_g;
      if (!gen_L.empty()) spec.overrides.L = Rational::parse(gen_L);
      if (!gen_terminals.empty()) spec.terminals = parse_vertex_list(gen_terminals);

      WeightedGraph core;
      if (!gen_cage.empty()) {
        core = cage_graph(gen_cage);
      } else if (gen_random != 0) {
        const auto target = gen_girth ? gen_girth : gen_g;
        if (!target) throw ArgumentError("--random needs --girth or --g");
        GenerationOptions opts;
        opts.retry_budget = gen_retry;
        core = generate_cubic_high_girth(gen_random, *target, gen_seed, GenerationStrategy::random_repair, opts);
      } else {
        core = io::graph_from_json(io::read_json(gen_core));
      }
      const auto inst = make_instance(core, spec);
      const CheckReport report = validate_instance(*inst);
      if (!report.ok()) {
        out << io::dump(io::report_to_json(report));
        return kExitInvalid;
      }
      emit(io::instance_to_json(*inst), gen_out, out);
      if (!gen_out.empty()) {
        const auto& p = inst->params();
        out << "instance: " << core.vertex_count() << " core vertices, " << inst->terminal_count()
            << " terminals, girth " << inst->core_girth() << ", M=" << p.M << " S=" << p.S << " L=" << p.L
            << " g=" << p.g << "\n";
      }
      return kExitOk;
    }

    if (val->parsed()) {
      const auto inst = io::load_instance(val_instance);
      Json j;
      CheckReport ir = validate_instance(*inst);
      j["instance"] = io::report_to_json(ir);
      bool ok = ir.ok();
      if (!val_solution.empty()) {
        SprSolution sol = io::load_solution(val_solution, inst);
        ValidationOptions vo;
        vo.enforce_edge_budget = !val_ignore_budget;
        CheckReport sr = validate_solution(sol, vo);
        j["solution"] = io::report_to_json(sr);
        ok = ok && sr.ok();
      }
      out << io::dump(j);
      return ok ? kExitOk : kExitInvalid;
    }

    if (sol_cmd->parsed()) {
      const auto inst = io::load_instance(solve_instance);
      SprSolution sol = solve(inst, solve_method, solve_budget);
      if (solve_out.empty()) {
        out << io::dump(io::solution_to_json(sol, std::nullopt));
      } else {
        io::write_json(solve_out, io::solution_to_json(sol, reference_for(solve_instance, solve_out)));
        out << solve_method << ": " << sol.h.edge_count() << " edges on " << inst->terminal_count()
            << " terminals\n";
      }
      return kExitOk;
    }

    if (eval->parsed()) {
      SprSolution sol = load_pair(eval_instance, eval_solution);
      ValidationOptions vo;
      vo.enforce_edge_budget = !eval_ignore_budget;
      const CheckReport report = validate_solution(sol, vo);
      Json j;
      j["validation"] = io::report_to_json(report);
      if (report.passed("vertex-set")) j["stretch"] = io::stretch_to_json(stretch(sol, common.threads));
      emit(j, eval_out, out);
      if (!eval_out.empty() && j.contains("stretch")) {
        out << "stretch " << j["stretch"]["max_ratio"].get<std::string>() << " ("
            << j["stretch"]["max_ratio_decimal"].get<std::string>() << ")" << (report.ok() ? "" : ", INVALID")
            << "\n";
      }
      return report.ok() ? kExitOk : kExitInvalid;
    }

    if (cover_cmd->parsed()) {
      SprSolution sol = load_pair(cover_instance, cover_solution);
      const Instance& inst = *sol.host;
      if (!validate_solution(sol).ok()) {
        err << "spr-lab cover: solution fails validation\n";
        return kExitInvalid;
      }
      const CoverFamily family = build_cover_family(sol);
      const CovDistribution d =
          estimate_cov_distribution(inst, family, cover_s, cover_trials, cover_seed, common.threads);
      const std::size_t m = cover_m.value_or(static_cast<std::size_t>(inst.params().M));
      const HighCovPath high = find_high_cov_path(inst, family, m, cover_budget, cover_seed);
      Json j;
      j["s"] = cover_s;
      j["seed"] = cover_seed;
      j["family_size"] = family.size();
      j["distribution"] = io::cov_distribution_to_json(d);
      Json w;
      w["m"] = m;
      w["path"] = io::path_to_json(high.path);
      w["cov"] = io::cov_result_to_json(high.cov);
      w["exhaustive"] = high.exhaustive;
      w["candidates"] = high.candidates;
      j["witness"] = w;
      emit(j, cover_out, out);
      if (!cover_out.empty()) {
        out << "Pr[cov >= 2] = " << d.fraction_at_least_two << " over " << d.trials << " trials, analytic bound "
            << d.analytic_bound << "\n";
      }
      return kExitOk;
    }

    if (cert_cmd->parsed()) {
      SprSolution sol = load_pair(cert_instance, cert_solution);
      CertifyOptions co;
      co.validation.enforce_edge_budget = !cert_ignore_budget;
      co.seed = cert_seed;
      co.path_budget = cert_budget;
      const Certificate cert = certify(*sol.host, sol, co);
      emit(io::certificate_to_json(cert), cert_out, out);
      if (!cert_out.empty()) {
        out << to_string(cert.kind) << ": ratio_bound " << cert.ratio_bound << " <= exact " << cert.exact_ratio
            << "\n";
      }
      return cert.kind == CertificateCase::preconditions_unmet ? kExitPreconditions : kExitOk;
    }

    if (sweep_cmd->parsed()) {
      SweepConfig cfg = load_sweep_config(sweep_config);
      cfg.options.threads = common.threads;
      cfg.options.timing = sweep_timing;
      if (sweep_out.empty()) {
        sweep(cfg.instances, cfg.solvers, cfg.options, out);
      } else {
        std::ofstream f(sweep_out, std::ios::binary);
        if (!f) throw FormatError("cannot write " + sweep_out);
        sweep(cfg.instances, cfg.solvers, cfg.options, f);
        out << cfg.instances.size() * cfg.solvers.size() << " rows written to " << sweep_out << "\n";
        if (!sweep_plot.empty()) write_plot_script(sweep_plot, sweep_out);
      }
      return kExitOk;
    }

    if (count_cmd->parsed()) {
      const auto inst = io::load_instance(count_instance);
      out << count_length_s_paths(inst->core(), count_s) << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "spr-lab: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace spr::cli
