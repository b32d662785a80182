#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homgrowth/cocycles.hpp"
#include "homgrowth/complexes.hpp"
#include "homgrowth/cosets.hpp"
#include "homgrowth/rational.hpp"

namespace homgrowth {

/// Letter x_factor^exponent of the free product of copies of Z/p.
struct FreeProductLetter {
  std::uint32_t factor = 0;
  Residue exponent = 1;
  friend bool operator==(const FreeProductLetter&, const FreeProductLetter&) = default;
};
using FreeProductWord = std::vector<FreeProductLetter>;

/// Merges adjacent letters of one factor mod p and drops trivial ones.
FreeProductWord reduce_free_product(const FreeProductWord& w, Residue p);
std::string free_product_to_string(const FreeProductWord& w);

/// Reads off the crossings of a 1-cell path with each cocycle: traversing a
/// 1-cell of weight w in cocycle i with sign s contributes x_i^{s·w}.
FreeProductWord crossing_word(const std::vector<RegularModPCocycle>& cocycles, const std::vector<SignedCell>& path);

struct LargenessCertificate {
  Residue p = 2;
  CosetTable cover;
  /// The vertex cut the certificate was found on (sorted 0-cells of the cover).
  std::vector<std::uint32_t> d_set;
  std::array<std::size_t, 2> kernel_dims{0, 0};
  std::vector<RegularModPCocycle> cocycles;
  std::vector<std::vector<SignedCell>> witness_loops;
  /// Images of the group generators (index-1 cover) or of the cover's
  /// Schreier generators (proper cover) in the free product.
  std::vector<FreeProductWord> generator_images;
  bool images_for_schreier_generators = false;
};

struct CertifyFailure {
  std::array<std::size_t, 2> kernel_dims{0, 0};
  std::string reason;
};

struct CertifyOutcome {
  std::optional<LargenessCertificate> certificate;
  CertifyFailure failure;
  bool success() const { return certificate.has_value(); }
};

/// Dimensions of the kernels of H¹(A) → H¹(C) and H¹(B) → H¹(C) together with
/// bases of those kernels as cocycles on A and on B.
struct RestrictionKernels {
  std::array<std::size_t, 2> dims{0, 0};
  std::array<std::vector<VectorFp>, 2> cocycles;  // over the 1-cells of A, of B
  std::array<InducedComplex, 2> sides;
  std::array<SubComplex, 2> c_in_side;
  std::size_t dp_a = 0, dp_b = 0, dp_c = 0;
};

RestrictionKernels restriction_kernels(const TwoComplex& k, const CutDecomposition& cut, Residue p);

/// p^{d_p(C) − min(d_p(A), d_p(B))} for the vertex cut; an upper bound on
/// the mod-p Cheeger constant of k.
Rational hp_upper_bound(const TwoComplex& k, const std::vector<bool>& d_set, Residue p);

/// Kernel criterion on the cut: both restriction kernels nonzero, and for
/// p = 2 one of them of dimension at least 2. On success builds one
/// non-separating cocycle on each side away from C, checks their union does
/// not separate the cover, and assembles witness loops and images.
CertifyOutcome certify_from_cut(const CosetTable& cover, const std::vector<bool>& d_set, Residue p);

/// Images of the generators (or, for a proper cover, of its Schreier
/// generators) read as crossing words.
std::vector<FreeProductWord> epimorphism_images(const LargenessCertificate& cert, bool* schreier = nullptr);

/// Re-derives everything from the cover table and cocycle data; throws
/// VerificationFailure naming the first violated invariant.
void verify_certificate(const LargenessCertificate& cert);

struct CutDiagnostics {
  std::vector<std::uint32_t> d_set;
  std::size_t boundary = 0;  // |∂D| in the Schreier graph
  Rational h_value;
  std::size_t dp_a = 0, dp_b = 0, dp_c = 0;
  std::size_t type_i = 0, type_ii = 0, type_iii = 0;
  std::size_t c_vertices = 0;
  std::size_t bound_i = 0, bound_ii_iii = 0, bound_c_vertices = 0;
  std::size_t mv_codimension = 0;
  std::size_t gamma_c_components = 0;
  std::int64_t hp_exponent = 0;

  bool type_i_ok() const { return type_i <= bound_i; }
  bool type_ii_iii_ok() const { return type_ii + type_iii <= bound_ii_iii; }
  bool c_vertices_ok() const { return c_vertices <= bound_c_vertices; }
  bool mv_ok() const { return mv_codimension <= gamma_c_components && gamma_c_components <= c_vertices; }
  bool all_ok() const { return type_i_ok() && type_ii_iii_ok() && c_vertices_ok() && mv_ok(); }
};

/// Edge-type tallies of Γ ∩ A for the labelled subgraph Γ, the three counting
/// bounds, the Mayer–Vietoris codimension bound, and the h_p exponent.
/// Throws InputError unless basis_labels maps onto a basis of H₁(G; F_p).
CutDiagnostics cut_diagnostics(const CosetTable& t, const std::vector<bool>& d_set, Residue p,
                               const std::vector<std::uint32_t>& basis_labels);

/// √10/3 − 1, the slack allowed in the linear-growth argument.
double epsilon_threshold();

struct SweepOptions {
  std::size_t max_vertices = 24;
  std::uint64_t max_connected_sets = 1u << 22;
  /// Every cut (up to complement) is tried when 2^{|V|−1} is at most this.
  std::uint64_t exhaustive_limit = 1u << 16;
  bool diagnostics = true;
  bool stop_at_first = true;
  /// In the exhaustive case on a normal cover, evaluate one cut per orbit of
  /// the deck group. Deck transformations are label-preserving automorphisms
  /// of the cover, so every statistic is the same across an orbit.
  bool use_symmetry = true;
  unsigned threads = 1;
};

struct SweepReport {
  /// Cuts covered by the sweep, each counted once.
  std::size_t cuts_tried = 0;
  /// Cuts actually evaluated (fewer than cuts_tried under symmetry reduction).
  std::size_t cuts_evaluated = 0;
  std::optional<LargenessCertificate> certificate;
  /// Smallest min(kernel dims) seen, and largest of each side.
  std::size_t min_kernel_dim = SIZE_MAX;
  std::array<std::size_t, 2> max_kernel_dims{0, 0};
  std::size_t successes = 0;
  /// Cuts whose h_p bound is below the threshold but where certification failed.
  std::size_t threshold_without_certificate = 0;
  std::size_t diagnostics_run = 0;
  std::size_t bound_violations = 0;
  std::vector<CutDiagnostics> violations;
  std::optional<Rational> best_hp;
};

/// Candidate cuts: Cheeger minimizers of the Schreier graph, BFS balls, and
/// every cut when small enough.
std::vector<std::vector<bool>> candidate_cuts(const CosetTable& t, const SweepOptions& options);

SweepReport sweep_cover(const CosetTable& t, Residue p, const SweepOptions& options);

}  // namespace homgrowth
