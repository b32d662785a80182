#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homgrowth/complexes.hpp"
#include "homgrowth/fplinalg.hpp"
#include "homgrowth/rational.hpp"

namespace homgrowth {

/// F_p value on every 1-cell.
struct Cochain1 {
  Residue p = 2;
  VectorFp values;

  std::vector<std::uint32_t> support() const;
  bool is_zero() const;
  friend bool operator==(const Cochain1&, const Cochain1&) = default;
};

/// Signed sum over every 2-cell boundary vanishes mod p.
bool is_cocycle(const TwoComplex& k, const Cochain1& c);

/// Cocycles whose classes form a basis of H¹(K; F_p): basis vectors of ker δ¹
/// taken in echelon order, keeping those independent of im δ⁰.
std::vector<VectorFp> cohomology_basis(const TwoComplex& k, Residue p);

/// Σ coeffs[i]·basis[i] for the basis above.
Cochain1 cocycle_from_class(const TwoComplex& k, const VectorFp& class_coeffs, Residue p);

/// True when c = δ⁰x for some 0-cochain x.
bool is_coboundary(const TwoComplex& k, const Cochain1& c);

/// δ⁰ of a 0-cochain: (δx)(e) = x(head) − x(tail).
VectorFp coboundary_of(const TwoComplex& k, const VectorFp& x, Residue p);

struct EdgeVertex {
  std::uint32_t cell = 0;
  Residue weight = 0;
  friend bool operator==(const EdgeVertex&, const EdgeVertex&) = default;
};

/// An arc from the interior vertex of a star 2-cell to the edge vertex of the
/// 1-cell at one boundary position.
struct Arc {
  std::uint32_t two_cell = 0;
  std::uint32_t position = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Weighted graph with one edge vertex per supported 1-cell and one interior
/// vertex per 2-cell whose boundary meets the support.
struct RegularModPCocycle {
  Residue p = 2;
  std::vector<EdgeVertex> edge_vertices;  // sorted by cell
  std::vector<std::uint32_t> star_cells;  // sorted
  std::vector<Arc> arcs;                  // sorted by (two_cell, position)

  std::size_t edge_vertex_count() const { return edge_vertices.size(); }
  std::size_t arc_count() const { return arcs.size(); }
  /// Value on every 1-cell of k.
  Cochain1 evaluation(const TwoComplex& k) const;
};

/// Edge vertex on each supported 1-cell, interior vertex with a full star of
/// arcs in each 2-cell meeting the support. Throws InputError for a
/// non-cocycle or a zero cochain.
RegularModPCocycle regularize(const TwoComplex& k, const Cochain1& c);

/// Re-checks the structural invariants of a regular cocycle on k; returns an
/// empty string when they hold, else the first violated invariant.
std::string check_regular(const TwoComplex& k, const RegularModPCocycle& g);

/// Merges cocycles with pairwise disjoint supports and star cells into one
/// graph; throws InputError when they overlap.
RegularModPCocycle disjoint_union(const std::vector<RegularModPCocycle>& parts);

/// Components of K minus the cocycle graph.
struct ComplementDecomposition {
  std::size_t component_count = 0;
  std::vector<std::uint32_t> zero_cell;
  /// Per 1-cell: component of the tail half and of the head half (equal for
  /// unsupported 1-cells).
  std::vector<std::array<std::uint32_t, 2>> one_cell_half;
  /// Per 2-cell: one entry for a non-star cell, one per sector otherwise
  /// (sector j runs from arc j to arc j+1 in boundary order).
  std::vector<std::vector<std::uint32_t>> two_cell_region;
};

ComplementDecomposition complement_components(const TwoComplex& k, const RegularModPCocycle& g);

/// Output of the non-separating reduction.
struct NonseparatingResult {
  /// Empty when the class was trivial.
  std::optional<RegularModPCocycle> cocycle;
  /// Final cellular representative (zero for a trivial class).
  Cochain1 representative;
  /// Edge-vertex count before each pass, ending with the final count.
  std::vector<std::size_t> edge_vertex_history;
  bool trivial_class() const { return !cocycle.has_value(); }
};

/// Repeatedly subtracts w·δ(χ_{K₁}) for a complement component K₁ cut off by
/// an edge vertex of weight w until the regularized cocycle no longer
/// separates or its support empties.
NonseparatingResult make_nonseparating(const TwoComplex& k, const Cochain1& c);

/// As make_nonseparating, after replacing c by a cohomologous cocycle that
/// vanishes on every 1-cell of `avoid`. Throws InputError if the class does
/// not restrict to zero on `avoid`.
NonseparatingResult relative_nonseparating(const TwoComplex& k, const SubComplex& avoid, const Cochain1& c);

struct RelativeSize {
  Rational value;
  bool exact = false;
  /// A representative realizing `value`.
  VectorFp representative;
};

/// min |supp(c + δx)| / #1-cells over 0-cochains x. Exact when the
/// p^{#0-cells − #components} shifts fit in `budget`; otherwise a local-search
/// upper bound flagged inexact.
RelativeSize relative_size(const TwoComplex& k, const Cochain1& c, std::uint64_t budget = 1u << 20);

}  // namespace homgrowth
