#pragma once

#include <cstdint>
#include <vector>

#include "homgrowth/cosets.hpp"
#include "homgrowth/fplinalg.hpp"
#include "homgrowth/words.hpp"

namespace homgrowth {

/// A 1-cell traversed forwards (+1) or backwards (−1).
struct SignedCell {
  std::uint32_t cell = 0;
  std::int8_t sign = 1;
  friend bool operator==(const SignedCell&, const SignedCell&) = default;
};

struct OneCell {
  std::uint32_t tail = 0;
  std::uint32_t head = 0;
  friend bool operator==(const OneCell&, const OneCell&) = default;
};

/// Combinatorial 2-complex: 0-cells are 0..zero_cells−1, 1-cells carry their
/// endpoints, 2-cells carry closed boundary edge paths.
class TwoComplex {
 public:
  TwoComplex() = default;
  /// Throws InputError if an endpoint is out of range or a boundary word is
  /// empty or not a closed edge path.
  TwoComplex(std::size_t zero_cells, std::vector<OneCell> one_cells, std::vector<std::vector<SignedCell>> two_cells);

  std::size_t zero_cell_count() const { return zero_cells_; }
  std::size_t one_cell_count() const { return one_cells_.size(); }
  std::size_t two_cell_count() const { return two_cells_.size(); }
  const std::vector<OneCell>& one_cells() const { return one_cells_; }
  const std::vector<std::vector<SignedCell>>& two_cells() const { return two_cells_; }

  /// Start and end 0-cell of a signed traversal.
  std::uint32_t start(SignedCell x) const { return x.sign > 0 ? one_cells_[x.cell].tail : one_cells_[x.cell].head; }
  std::uint32_t end(SignedCell x) const { return x.sign > 0 ? one_cells_[x.cell].head : one_cells_[x.cell].tail; }

  std::int64_t euler_characteristic() const;
  /// Occurrences of each 1-cell in all boundary words.
  std::vector<std::size_t> valences() const;
  std::size_t max_valence() const;
  /// Connected components; returns the component of every 0-cell.
  std::vector<std::uint32_t> components(std::size_t* count = nullptr) const;
  std::size_t component_count() const;

  friend bool operator==(const TwoComplex&, const TwoComplex&) = default;

 private:
  std::size_t zero_cells_ = 0;
  std::vector<OneCell> one_cells_;
  std::vector<std::vector<SignedCell>> two_cells_;
};

/// Kept-cell flags of a subcomplex of some parent complex.
struct SubComplex {
  std::vector<bool> zero;
  std::vector<bool> one;
  std::vector<bool> two;

  static SubComplex empty(const TwoComplex& k);
  static SubComplex full(const TwoComplex& k);
  /// A kept 1-cell keeps its endpoints; a kept 2-cell keeps its boundary.
  bool is_closed(const TwoComplex& k) const;
  std::size_t count0() const;
  std::size_t count1() const;
  std::size_t count2() const;
  friend bool operator==(const SubComplex&, const SubComplex&) = default;
};

SubComplex subcomplex_union(const SubComplex& a, const SubComplex& b);
SubComplex subcomplex_intersection(const SubComplex& a, const SubComplex& b);

/// A subcomplex re-expressed as a complex in its own right, with maps from
/// its cells back to the parent.
struct InducedComplex {
  TwoComplex complex;
  std::vector<std::uint32_t> zero_to_parent;
  std::vector<std::uint32_t> one_to_parent;
  std::vector<std::uint32_t> two_to_parent;
  /// Parent 1-cell index → local index, or UINT32_MAX when not kept.
  std::vector<std::uint32_t> one_from_parent;
  std::vector<std::uint32_t> zero_from_parent;
};

InducedComplex induced_complex(const TwoComplex& k, const SubComplex& sub);

/// One 0-cell, one loop per generator, one 2-cell per relator.
TwoComplex presentation_complex(const Presentation& pres);

/// Finite cover of the presentation complex for the subgroup of t: 0-cells
/// are cosets, 1-cell c·|S| + s runs from c to c·s, and 2-cell c·|R| + r is
/// the lift of relator r starting at c.
TwoComplex covering_complex(const CosetTable& t);
/// As above, after checking that `base` is the presentation complex of t.
TwoComplex covering_complex(const TwoComplex& base, const CosetTable& t);

struct HomologyProfile {
  Residue p = 2;
  std::size_t d0 = 0;
  std::size_t d1 = 0;
  std::size_t rank_boundary1 = 0;
  std::size_t rank_boundary2 = 0;
};

/// ∂₁ : C₁ → C₀ as a 0-cells × 1-cells matrix.
MatrixFp boundary1(const TwoComplex& k, Residue p);
/// ∂₂ : C₂ → C₁ as a 1-cells × 2-cells matrix of signed occurrence counts.
MatrixFp boundary2(const TwoComplex& k, Residue p);
/// δ⁰ : C⁰ → C¹ as a 1-cells × 0-cells matrix (the transpose of ∂₁).
MatrixFp coboundary0(const TwoComplex& k, Residue p);
/// δ¹ : C¹ → C² as a 2-cells × 1-cells matrix (the transpose of ∂₂).
MatrixFp coboundary1(const TwoComplex& k, Residue p);

HomologyProfile homology_profile(const TwoComplex& k, Residue p);
std::size_t dp(const TwoComplex& k, Residue p);
std::size_t dp(const TwoComplex& k, const SubComplex& sub, Residue p);

/// Basis of the 1-cycles Z₁ = ker ∂₁ (vectors over 1-cells).
std::vector<VectorFp> cycle_basis(const TwoComplex& k, Residue p);

/// Rank of the image of H₁(sub) → H₁(k), computed as
/// dim(Z₁(sub) + B₁(k)) − dim B₁(k).
std::size_t h1_image_rank(const TwoComplex& k, const std::vector<const SubComplex*>& subs, Residue p);

struct CutDecomposition {
  SubComplex a;
  SubComplex b;
  SubComplex c;
};

/// A = closure of the cells meeting `d_set`, B = closure of the cells meeting
/// its complement, C = A ∩ B.
CutDecomposition cut_decomposition(const TwoComplex& k, const std::vector<bool>& d_set);

/// The 1-dimensional subcomplex of the cover of t made of every 0-cell and the
/// 1-cells whose generator label is in `labels`.
SubComplex labelled_subgraph_pullback(const CosetTable& t, const std::vector<std::uint32_t>& labels);

/// Connected components of a 1-dimensional subcomplex restricted to its kept
/// 0-cells.
std::size_t graph_component_count(const TwoComplex& k, const SubComplex& sub);

struct LocalStructureReport {
  /// 1-cells with valence 1 (free faces).
  std::vector<std::uint32_t> valence_one;
  /// 1-cells with valence 0, whose interior points separate locally.
  std::vector<std::uint32_t> valence_zero;
  /// 0-cells whose link graph is disconnected.
  std::vector<std::uint32_t> locally_separating_vertices;
};

/// Reports the local hypotheses of the converse theorems without repairing
/// them.
LocalStructureReport local_structure(const TwoComplex& k);

}  // namespace homgrowth
