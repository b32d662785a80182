#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homgrowth/fplinalg.hpp"
#include "homgrowth/words.hpp"

namespace homgrowth {

/// Transitive right action of G on the cosets of a finite-index subgroup H.
/// Coset 0 is H itself. Generator g sends coset c to perm(g)[c].
class CosetTable {
 public:
  /// Validates bijectivity, relator closure at every coset, and transitivity
  /// from coset 0; throws InputError otherwise.
  CosetTable(std::shared_ptr<const Presentation> pres, std::vector<std::vector<std::uint32_t>> action);

  const Presentation& presentation() const { return *pres_; }
  const std::shared_ptr<const Presentation>& presentation_ptr() const { return pres_; }
  std::size_t index() const { return index_; }
  std::size_t generator_count() const { return action_.size(); }

  const std::vector<std::uint32_t>& perm(std::uint32_t gen) const { return action_[gen]; }
  std::uint32_t act(std::uint32_t coset, Letter x) const {
    return x.sign > 0 ? action_[x.gen][coset] : inverse_[x.gen][coset];
  }
  std::uint32_t trace(std::uint32_t coset, const Word& w) const;
  bool contains(const Word& w) const { return trace(0, w) == 0; }

  /// Same table with cosets renumbered in BFS order from the basepoint.
  CosetTable standardized() const;

 private:
  std::shared_ptr<const Presentation> pres_;
  std::size_t index_ = 0;
  std::vector<std::vector<std::uint32_t>> action_;
  std::vector<std::vector<std::uint32_t>> inverse_;
};

struct SchreierEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint32_t label = 0;
};

/// X(G/H; S): edge number c·|S| + s joins coset c to c·s.
struct SchreierGraph {
  std::size_t vertex_count = 0;
  std::vector<SchreierEdge> edges;

  /// Degree counting a loop twice.
  std::vector<std::size_t> degrees() const;
};

/// Coset enumeration (HLT with lookahead) for the subgroup generated by
/// `subgroup_gens`. Throws BudgetExceeded when more than `max_cosets` live
/// cosets would be needed; no partial table is ever returned.
CosetTable todd_coxeter(std::shared_ptr<const Presentation> pres, const std::vector<Word>& subgroup_gens,
                        std::size_t max_cosets = 100000);

/// Table of the stabilizer of `point` under a validated permutation action.
CosetTable from_quotient(std::shared_ptr<const Presentation> pres, const FiniteQuotientSpec& spec,
                         std::uint32_t point = 0);

/// Index-1 table of G itself.
CosetTable whole_group(std::shared_ptr<const Presentation> pres);

SchreierGraph schreier_graph(const CosetTable& t);

/// BFS spanning tree of the Schreier graph plus the resulting transversal.
struct SpanningTree {
  /// is_tree_edge[c·|S| + s]
  std::vector<bool> is_tree_edge;
  /// Word from the basepoint to each coset along the tree.
  std::vector<Word> transversal;
  /// Non-tree edges in increasing edge number; these index the subgroup's
  /// Schreier generators.
  std::vector<std::uint32_t> free_edges;
};

SpanningTree spanning_tree(const CosetTable& t);

/// Schreier generator for each non-tree edge (c, s): path(c) · s · path(c·s)⁻¹.
std::vector<Word> schreier_generators(const CosetTable& t);

/// Presentation of the subgroup on the non-tree edges, with every relator
/// rewritten from every coset. Generator k corresponds to free_edges[k].
Presentation reidemeister_schreier(const CosetTable& t);

/// Basis of Hom(H, Z/p) for the subgroup H of t, each homomorphism given by
/// its values on the Schreier generators (free_edges order).
std::vector<VectorFp> homomorphism_basis(const CosetTable& t, Residue p);

/// Table (as a subgroup of G) of the kernel of a nonzero homomorphism H → Z/p
/// given by its values on the Schreier generators.
CosetTable kernel_table(const CosetTable& t, Residue p, const VectorFp& hom);

/// Every index-p normal subgroup of H, one per kernel of a nontrivial
/// homomorphism H → Z/p (homomorphisms normalized so the first nonzero
/// coordinate is 1). Returned in a fixed order. Throws BudgetExceeded when
/// there would be more than `max_count` of them.
std::vector<CosetTable> index_p_normal_subgroups(const CosetTable& t, Residue p, std::uint64_t max_count = 1u << 16);

/// Cosets numbered by BFS from the basepoint, generators visited in the
/// order s₀, s₀⁻¹, s₁, s₁⁻¹, …; rows are the images under s₀..s_{n−1}.
std::vector<std::uint32_t> canonical_form(const CosetTable& t);

/// Text key `p|index|row,row,…` where each row lists one coset's images
/// (dot-separated) in canonical numbering.
std::string canonical_key(const CosetTable& t, Residue p);

/// Rebuilds a table from canonical_form output.
CosetTable table_from_canonical(std::shared_ptr<const Presentation> pres, const std::vector<std::uint32_t>& form);

/// For inner ≤ outer, image in outer of each inner coset; nullopt otherwise.
std::optional<std::vector<std::uint32_t>> coset_projection(const CosetTable& inner, const CosetTable& outer);

bool is_subgroup_of(const CosetTable& inner, const CosetTable& outer);

/// inner ≤ outer and every conjugate of an inner Schreier generator by an
/// outer Schreier generator lies in inner.
bool is_normal_in(const CosetTable& inner, const CosetTable& outer);

/// Left multiplication by h (an element normalizing the subgroup of t) as a
/// permutation of cosets: H·w ↦ H·h·w.
std::vector<std::uint32_t> deck_transformation(const CosetTable& t, const Word& h);

/// G = tables[0] ≥ tables[1] ≥ … with each step of p-power index.
struct SubnormalChain {
  Residue p = 2;
  std::vector<CosetTable> tables;

  std::vector<std::uint64_t> step_indices() const;

  struct Validation {
    bool first_step_normal = true;
    bool fully_subnormal = true;
  };
  /// Throws InputError on a broken inclusion, a non-p-power step, or a later
  /// non-normal step. A non-normal first step is accepted and flagged.
  Validation validate() const;
};

}  // namespace homgrowth
