#include "spr/certifier.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

#include "spr/errors.hpp"
#include "spr/parallel.hpp"

namespace spr {

std::string_view to_string(CertificateCase c) {
  switch (c) {
    case CertificateCase::detour:
      return "detour";
    case CertificateCase::long_edge:
      return "long-edge";
    case CertificateCase::many_edges:
      return "many-edges";
    case CertificateCase::preconditions_unmet:
      return "preconditions-unmet";
    case CertificateCase::disconnected:
      return "disconnected";
  }
  return "?";
}

namespace {

Length min_terminal_distance(const Instance& inst) {
  Length best = std::numeric_limits<Length>::max();
  for (std::size_t i = 0; i < inst.terminal_count(); ++i) {
    for (std::size_t j = i + 1; j < inst.terminal_count(); ++j) {
      const ExtLength d = inst.terminal_distance(i, j);
      if (d.is_finite()) best = std::min(best, d.value());
    }
  }
  return best;
}

}  // namespace

Certificate certify(const Instance& inst, const SprSolution& sol, const CertifyOptions& options) {
  if (sol.host.get() != &inst && (!sol.host || !(sol.host->full() == inst.full()))) {
    throw ArgumentError("solution belongs to a different instance");
  }
  const CheckReport report = validate_solution(sol, options.validation);
  if (!report.ok()) {
    std::string failed;
    for (const auto& c : report.checks) {
      if (!c.passed) failed += " " + c.name;
    }
    throw ValidationError("solution rejected:" + failed);
  }

  const auto& params = inst.params();
  const Length M = params.M;
  Certificate cert;
  cert.girth = inst.core_girth();
  cert.preconditions = {
      {"3M < girth/2", ExtLength(6 * M) < cert.girth},
      {"S < girth", ExtLength(params.S) < cert.girth},
      {"every core vertex carries a terminal", inst.full_terminal()},
  };
  bool met = true;
  for (const auto& f : cert.preconditions) met = met && f.value;

  if (!met) {
    const StretchReport st = stretch(sol, 1);
    cert.kind = CertificateCase::preconditions_unmet;
    cert.witness_terminals = st.witness;
    cert.exact_ratio = st.max_ratio;
    cert.ratio_bound = Rational(1);
    cert.length_bound = Rational(0);
    cert.note = "case analysis not applicable; trivial bound";
    return cert;
  }

  const CoverFamily family = build_cover_family(sol);
  HighCovPath high = find_high_cov_path(inst, family, static_cast<std::size_t>(M), options.path_budget, options.seed);
  cert.p = high.path;
  cert.cov = high.cov.value;
  const std::size_t iu = *inst.terminal_at(cert.p.front());
  const std::size_t iv = *inst.terminal_at(cert.p.back());
  cert.witness_terminals = {iu, iv};

  const WeightedGraph& full = inst.full();
  std::vector<Vertex> prime{inst.terminal_vertex(iu)};
  prime.insert(prime.end(), cert.p.vertices().begin(), cert.p.vertices().end());
  prime.push_back(inst.terminal_vertex(iv));
  const Path p_prime = Path::from_vertices(full, std::move(prime));
  cert.p_prime_length = p_prime.length();
  if (inst.terminal_distance(iu, iv) != ExtLength(3 * M) || p_prime.length() != 3 * M) {
    throw std::logic_error("P' is not a shortest t_u-t_v path although 3M < girth/2");
  }

  const ExtLength dist_h = distances_from(sol.h, static_cast<Vertex>(iu))[iv];
  if (dist_h.is_infinite()) {
    cert.kind = CertificateCase::disconnected;
    cert.length_bound = Rational::infinity();
    cert.ratio_bound = Rational::infinity();
    cert.exact_ratio = Rational::infinity();
    cert.note = "witness terminals disconnected in h";
    return cert;
  }
  cert.exact_ratio = Rational::ratio(dist_h, 3 * M);
  cert.q_h = shortest_path(sol.h, static_cast<Vertex>(iu), static_cast<Vertex>(iv));
  cert.r = image_path(sol, cert.q_h);

  const Dichotomy verdict = girth_dichotomy(p_prime, cert.r, cert.girth);
  if (verdict == Dichotomy::violation) throw std::logic_error("girth dichotomy violated by P' and R");

  if (verdict == Dichotomy::long_cycle) {
    cert.kind = CertificateCase::detour;
    cert.length_bound = Rational(cert.girth.value() - cert.p.length());
    if (Rational(cert.r.length()) < cert.length_bound) throw std::logic_error("detour bound exceeds |R|");
    cert.note = "P not contained in R; |R| >= girth - |P|";
  } else {
    bool long_edge = false;
    const auto qv = cert.q_h.vertices();
    for (std::size_t i = 1; i < qv.size(); ++i) {
      if (Rational(*sol.h.weight(qv[i - 1], qv[i])) >= params.L) long_edge = true;
    }
    if (long_edge) {
      cert.kind = CertificateCase::long_edge;
      cert.length_bound = params.L;
      cert.note = "Q_H uses an h-edge of weight >= L";
    } else {
      cert.kind = CertificateCase::many_edges;
      if (cert.cov.is_infinite()) throw std::logic_error("P covered by image paths of short edges but cov(P) infinite");
      const Length dmin = min_terminal_distance(inst);
      if (dmin < 2 * M) throw std::logic_error("terminal pair closer than 2M");
      if (static_cast<Length>(cert.q_h.edge_count()) < cert.cov.value()) {
        throw std::logic_error("Q_H has fewer edges than cov(P)");
      }
      cert.length_bound = Rational(cert.cov.value()) * Rational(dmin);
      cert.note = "Q_H has >= cov(P) edges, each of weight >= min terminal distance";
    }
  }
  cert.ratio_bound = max(Rational(1), cert.length_bound / Rational(3 * M));
  if (cert.ratio_bound > cert.exact_ratio) throw std::logic_error("certificate overclaims its ratio");
  return cert;
}

SprSolution solve(const std::shared_ptr<const Instance>& inst, std::string_view method, std::size_t brute_budget) {
  if (method == "voronoi") return voronoi_solution(inst);
  if (method == "brute") return brute_force_optimal(inst, brute_budget).best;
  if (method == "mst") return metric_mst_solution(inst);
  if (method == "metric") return metric_completion(inst);
  throw ArgumentError("unknown solver '" + std::string(method) + "'");
}

void sweep(std::span<const SweepInstance> instances, std::span<const std::string> solvers, const SweepOptions& options,
           std::ostream& out) {
  const std::size_t rows = instances.size() * solvers.size();
  std::vector<std::string> lines(rows);
  parallel_for(rows, resolve_threads(options.threads), [&](std::size_t row) {
    const SweepInstance& item = instances[row / solvers.size()];
    const std::string& solver = solvers[row % solvers.size()];
    const auto& p = item.instance->params();
    std::ostringstream line;
    line << item.name << ',' << item.instance->terminal_count() << ',' << p.g << ',' << p.M << ',' << p.S << ','
         << p.L.to_string() << ',' << solver << ',';
    const auto start = std::chrono::steady_clock::now();
    try {
      SprSolution sol = solve(item.instance, solver, options.brute_force_budget);
      const StretchReport st = stretch(sol, 1);
      CertifyOptions copt;
      copt.validation.enforce_edge_budget = solver != "metric";
      copt.path_budget = options.path_budget;
      copt.seed = options.seed;
      const Certificate cert = certify(*item.instance, sol, copt);
      const auto elapsed =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      line << st.max_ratio.to_decimal() << ',' << to_string(cert.kind) << ',' << cert.ratio_bound.to_decimal() << ','
           << cert.exact_ratio.to_decimal() << ',' << (options.timing ? std::to_string(elapsed) : "NA") << ',';
    } catch (const std::exception& e) {
      std::string message = e.what();
      for (char& c : message) {
        if (c == ',' || c == '\n') c = ';';
      }
      line << ",,,,NA," << message;
    }
    lines[row] = line.str();
  });
  out << "instance,k,g,M,S,L,solver,stretch,case,ratio_bound,exact_ratio,runtime_ms,error\n";
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace spr
