#include <array>
#include <vector>

#include "spr/errors.hpp"
#include "spr/instance.hpp"

namespace spr {

namespace {

// Hamiltonian cycle 0..n-1 plus chords i -- i + shift[i mod |shift|].
WeightedGraph from_lcf(std::size_t n, std::span<const int> shifts, int repeats) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  const int count = static_cast<int>(n);
  for (int i = 0; i < count; ++i) edges.emplace_back(i, (i + 1) % count);
  const int period = static_cast<int>(shifts.size());
  if (period * repeats != count) throw std::logic_error("LCF code does not cover the cycle");
  for (int i = 0; i < count; ++i) {
    int j = ((i + shifts[i % period]) % count + count) % count;
    if (i < j) edges.emplace_back(i, j);
  }
  return WeightedGraph::unit(n, edges);
}

WeightedGraph petersen() {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return WeightedGraph::unit(10, edges);
}

constexpr std::array<int, 2> kHeawood{5, -5};
constexpr std::array<int, 3> kMcGee{12, 7, -7};
constexpr std::array<int, 6> kTutteCoxeter{-13, -9, 7, -7, 9, 13};
constexpr std::array<int, 14> kHarries{-29, -19, -13, 13, 21, -27, 27, 33, -13, 13, 19, -21, -33, 29};

const std::array<CageEntry, 5> kCatalog{{
    {"petersen", 10, 5},
    {"heawood", 14, 6},
    {"mcgee", 24, 7},
    {"tutte-coxeter", 30, 8},
    {"harries", 70, 10},
}};

}  // namespace

std::span<const CageEntry> cage_catalog() { return kCatalog; }

WeightedGraph cage_graph(std::string_view name) {
  if (name == "petersen") return petersen();
  if (name == "heawood") return from_lcf(14, kHeawood, 7);
  if (name == "mcgee") return from_lcf(24, kMcGee, 8);
  if (name == "tutte-coxeter") return from_lcf(30, kTutteCoxeter, 5);
  if (name == "harries") return from_lcf(70, kHarries, 5);
  throw ArgumentError("unknown cage '" + std::string(name) + "'");
}

}  // namespace spr
