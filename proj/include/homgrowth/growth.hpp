#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homgrowth/cosets.hpp"
#include "homgrowth/rational.hpp"

namespace homgrowth {

struct GrowthLevel {
  std::size_t level = 0;
  std::uint64_t index = 1;
  /// Number of subnormal subgroups of index exactly p^level.
  std::uint64_t count = 0;
  /// Largest d_p over the level.
  std::size_t r = 0;
};

struct GrowthLedger {
  Residue p = 2;
  std::size_t d_p = 0;  // d_p(G)
  std::vector<GrowthLevel> levels;
  /// Set when a budget stopped the enumeration; the last level listed is complete.
  bool truncated = false;
  std::string truncation_note;

  /// a_n ≤ a_{n−1}·p^{r_{n−1}} at every computed level.
  bool count_inequality_holds() const;
  /// r_n − 1 ≤ pⁿ·(d_p(G) − 1) at every computed level.
  bool homology_bound_holds() const;
  /// (p^{d_p(G)} − 1)/(p − 1) when it fits in 64 bits.
  std::optional<std::uint64_t> expected_level_one() const;
};

struct SubgroupNode {
  std::size_t level = 0;
  std::string key;
  CosetTable table;
  std::size_t dp = 0;
  /// Nodes of the previous level in which this subgroup is an index-p normal subgroup.
  std::vector<std::uint32_t> parents;
};

struct GrowthResult {
  GrowthLedger ledger;
  std::vector<SubgroupNode> nodes;  // ordered by level, then discovery
  /// Edges whose child gradient (d−1)/index exceeds its parent's.
  std::size_t gradient_violations = 0;
  /// Nodes with d_p − 1 > index·(d_p(G) − 1).
  std::size_t subnormal_bound_violations = 0;

  std::vector<std::uint32_t> level_nodes(std::size_t level) const;
};

struct GrowthOptions {
  std::size_t max_cosets = 4096;      // largest index expanded
  std::size_t max_subgroups = 20000;  // total nodes kept
  unsigned threads = 1;
};

/// Level-by-level enumeration of subnormal p-power subgroups: level n is the
/// deduplicated set of index-p normal subgroups of the level n−1 subgroups.
GrowthResult enumerate_subnormal(std::shared_ptr<const Presentation> pres, Residue p, std::size_t max_level,
                                 const GrowthOptions& options = {});

/// Chain from G to a deepest-level node of maximal gradient, following the
/// first recorded parent at each step.
SubnormalChain max_gradient_chain(const GrowthResult& result);

/// Chain built one index-p step at a time, each step taking the kernel with
/// the largest d_p (first in index_p_normal_subgroups order on ties). Stops
/// early when the index would pass max_cosets.
SubnormalChain greedy_gradient_chain(std::shared_ptr<const Presentation> pres, Residue p, std::size_t levels,
                                     std::size_t max_cosets = 4096);

struct GradientReport {
  std::vector<std::size_t> dp;
  std::vector<std::uint64_t> index;
  std::vector<Rational> gradient;       // (d_p − 1)/index
  std::vector<Rational> normalized;     // d_p/index
  std::vector<Rational> infimum;        // running minimum of gradient
  bool non_increasing = true;
};

GradientReport gradient(const SubnormalChain& chain);

struct CountBound {
  std::size_t level = 0;
  /// Integer exponent e with the bound (p^e − 1)/(p − 1).
  std::uint64_t exponent = 0;
  std::optional<std::uint64_t> value;  // exact when it fits
  double log_value = 0;
  bool holds = false;
};

struct GrowthDiagnostics {
  Residue p = 2;
  std::vector<double> log_count_ratio;  // ln(a_n)/pⁿ
  std::vector<double> rank_sum_ratio;   // (Σ_{i<n} r_i)/pⁿ
  /// ln a_n ≤ ln p · Σ_{i<n} r_i at every level.
  bool upper_bound_holds = true;
  /// Lower bounds from a gradient λ, one per level n ≥ 1.
  std::optional<Rational> lambda;
  std::vector<CountBound> lower_bounds;
};

/// Needs at least two levels. With `lambda` (a gradient attained along a
/// chain), reports (p^{⌊λpⁿ⁻¹⌋+1} − 1)/(p − 1) ≤ a_n at each level.
GrowthDiagnostics growth_diagnostics(const GrowthLedger& ledger, std::optional<Rational> lambda = std::nullopt);

}  // namespace homgrowth
