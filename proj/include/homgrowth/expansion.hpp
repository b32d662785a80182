#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homgrowth/cosets.hpp"
#include "homgrowth/rational.hpp"

namespace homgrowth {

enum class CheegerMethod { exact, bounds };

struct CheegerResult {
  /// Exact h, or for bounds the ratio of the best sweep cut (an upper bound).
  Rational value;
  /// A set with |∂A|/|A| = value and 0 < |A| ≤ |V|/2. For exact results the
  /// smallest such minimizer, ties broken lexicographically.
  std::vector<std::uint32_t> witness;
  CheegerMethod method = CheegerMethod::exact;
  /// Largest minimizer (lexicographically least among those), only when the
  /// search covered every vertex subset.
  std::optional<std::vector<std::uint32_t>> largest_minimizer;
  /// Spectral data, present for bounds.
  std::optional<double> lambda1;
  std::optional<double> spectral_lower;
  std::optional<double> spectral_upper;
};

/// |∂A|: edges with exactly one endpoint in A (loops never count).
std::size_t boundary_size(const SchreierGraph& x, const std::vector<bool>& in_a);

/// Exact Cheeger constant. Graphs with at most `max_vertices` vertices are
/// searched over every subset; larger graphs (up to 64 vertices) over
/// connected subsets only, which still finds the tie-broken minimizer but not
/// the largest one. Throws BudgetExceeded past `max_connected_sets` connected
/// sets, and InputError for graphs with fewer than two vertices.
CheegerResult cheeger_exact(const SchreierGraph& x, std::size_t max_vertices = 24,
                            std::uint64_t max_connected_sets = 1u << 22, unsigned threads = 1);

/// Spectral bracket λ₁/2 ≤ h ≤ √(2kλ₁) for the loop-free Laplacian, with the
/// best Fiedler sweep cut as witness and upper value.
CheegerResult cheeger_bounds(const SchreierGraph& x);

/// Exact when feasible, else bounds.
CheegerResult cheeger(const SchreierGraph& x, std::size_t max_vertices = 24, std::uint64_t max_connected_sets = 1u << 22,
                      unsigned threads = 1);

struct MinimizerReport {
  std::size_t level = 0;
  std::size_t vertex_count = 0;
  /// h of the previous level; absent when it has a single vertex (treated as +∞).
  std::optional<Rational> previous_h;
  Rational h;
  bool strict_decrease = false;
  /// Largest minimizer at this level when strict_decrease.
  std::vector<std::uint32_t> minimizer;
  /// |V|/4 < |D| ≤ |V|/2 holds for `minimizer`.
  bool compliant = false;
};

/// Checks the large-minimizer property at chain level i (i ≥ 1). Both levels
/// must be small enough for exhaustive search.
MinimizerReport minimizer_structure(const SubnormalChain& chain, std::size_t i, std::size_t max_vertices = 24);

struct TauLevel {
  std::size_t index = 1;
  std::optional<CheegerResult> cheeger;  // absent for a single vertex
  std::size_t dp = 0;
  Rational gradient;       // (d_p − 1)/index
  Rational normalized_dp;  // d_p/index
};

struct TauDiagnostics {
  Residue p = 2;
  std::vector<TauLevel> levels;
  /// Computed h values never increase (exact levels compared exactly).
  bool h_monotone = true;
  /// (d_p − 1)/index never increases.
  bool gradient_monotone = true;
  std::string hint;
};

TauDiagnostics tau_diagnostics(const SubnormalChain& chain, std::size_t max_vertices = 24,
                               std::uint64_t max_connected_sets = 1u << 22, unsigned threads = 1);

}  // namespace homgrowth
