#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "homgrowth/cocycles.hpp"
#include "homgrowth/complexes.hpp"

namespace testgen {

// Random 2-complex with at most `max_cells` cells in total. 2-cells are random
// closed walks: a short random walk followed by a BFS path back to its start.
inline homgrowth::TwoComplex random_complex(std::mt19937_64& rng, std::size_t max_cells = 12) {
  using namespace homgrowth;
  const std::size_t v = 1 + rng() % 3;
  const std::size_t e = 1 + rng() % std::min<std::size_t>(6, max_cells - v - 1);
  std::vector<OneCell> edges;
  for (std::size_t i = 0; i < e; ++i)
    edges.push_back({static_cast<std::uint32_t>(rng() % v), static_cast<std::uint32_t>(rng() % v)});
  std::vector<std::vector<SignedCell>> incident(v);
  for (std::uint32_t i = 0; i < e; ++i) {
    incident[edges[i].tail].push_back({i, 1});
    incident[edges[i].head].push_back({i, -1});
  }
  auto end_of = [&](SignedCell x) { return x.sign > 0 ? edges[x.cell].head : edges[x.cell].tail; };
  const std::size_t room = max_cells - v - e;
  const std::size_t f = room == 0 ? 0 : rng() % (room + 1);
  std::vector<std::vector<SignedCell>> faces;
  for (std::size_t i = 0; i < f; ++i) {
    std::uint32_t start = static_cast<std::uint32_t>(rng() % v);
    if (incident[start].empty()) continue;
    std::vector<SignedCell> path;
    std::uint32_t at = start;
    const std::size_t steps = 1 + rng() % 4;
    for (std::size_t s = 0; s < steps; ++s) {
      const auto x = incident[at][rng() % incident[at].size()];
      path.push_back(x);
      at = end_of(x);
    }
    // BFS back to start.
    std::vector<int> prev_edge(v, -1);
    std::vector<SignedCell> via(v);
    std::vector<bool> seen(v, false);
    std::queue<std::uint32_t> q;
    q.push(at);
    seen[at] = true;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (const auto& x : incident[u]) {
        const auto w = end_of(x);
        if (!seen[w]) {
          seen[w] = true;
          via[w] = x;
          prev_edge[w] = static_cast<int>(u);
          q.push(w);
        }
      }
    }
    std::vector<SignedCell> back;
    for (std::uint32_t w = start; w != at; w = static_cast<std::uint32_t>(prev_edge[w])) back.push_back(via[w]);
    path.insert(path.end(), back.rbegin(), back.rend());
    faces.push_back(path);
  }
  return TwoComplex(v, edges, faces);
}

// Random cocycle: a random combination of a basis of ker δ¹. May be zero.
inline homgrowth::Cochain1 random_cocycle(std::mt19937_64& rng, const homgrowth::TwoComplex& k, homgrowth::Residue p) {
  using namespace homgrowth;
  Cochain1 c{p, VectorFp(k.one_cell_count(), 0)};
  for (const auto& z : kernel_basis(coboundary1(k, p))) c.values = add_scaled(c.values, z, static_cast<Residue>(rng() % p), p);
  return c;
}

}  // namespace testgen

namespace testgen {

// Kernel of a uniformly random nonzero homomorphism H -> Z/p, or nullopt when
// there is none. Avoids enumerating every index-p normal subgroup.
inline std::optional<homgrowth::CosetTable> random_kernel(std::mt19937_64& rng, const homgrowth::CosetTable& t,
                                                          homgrowth::Residue p) {
  using namespace homgrowth;
  const auto basis = homomorphism_basis(t, p);
  if (basis.empty()) return std::nullopt;
  VectorFp hom(basis.front().size(), 0);
  while (hamming_weight(hom) == 0)
    for (const auto& b : basis) hom = add_scaled(hom, b, static_cast<Residue>(rng() % p), p);
  return kernel_table(t, p, hom);
}

}  // namespace testgen
