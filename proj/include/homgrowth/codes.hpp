#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homgrowth/complexes.hpp"
#include "homgrowth/cosets.hpp"
#include "homgrowth/fplinalg.hpp"
#include "homgrowth/rational.hpp"

namespace homgrowth {

struct CodeDistance {
  std::size_t value = 0;
  bool exact = false;
};

/// Linear code given by a k × n generator matrix with independent rows.
struct LinearCode {
  Residue p = 2;
  MatrixFp generator;

  std::size_t length() const { return generator.cols(); }
  std::size_t dimension() const { return generator.rows(); }
  Rational rate() const;
};

/// Rows are cocycle representatives of a basis of H¹(K; F_p), chosen by the
/// deterministic echelon completion of cohomology_basis.
LinearCode code_from_cover(const TwoComplex& k, Residue p);

/// Minimum weight of a nonzero codeword. Exact by enumerating all codewords
/// up to scalars when p^k ≤ budget; otherwise the best of all single rows,
/// all two-row combinations and `samples` seeded random combinations, flagged
/// inexact.
CodeDistance code_distance(const LinearCode& code, std::uint64_t budget = 1u << 22, std::size_t samples = 4096,
                           std::uint64_t seed = 1);

/// `p k n` header, then one row per line: digits run together when p ≤ 10,
/// space-separated otherwise.
void write_code(std::ostream& os, const LinearCode& code);
std::string code_to_text(const LinearCode& code);
/// Parses the text format; throws InputError on malformed input or dependent rows.
LinearCode read_code(std::istream& is);
LinearCode code_from_text(const std::string& text);

struct ClassMinimum {
  Rational value;
  /// True when every nonzero class was visited with exact relative sizes.
  bool exact = false;
  std::size_t classes_tried = 0;
};

/// Minimum relative size over nonzero classes of H¹(K; F_p). Every class (up
/// to scalars) when p^k ≤ class_budget, else the basis classes and `samples`
/// seeded random classes.
ClassMinimum min_relative_size(const TwoComplex& k, Residue p, std::uint64_t class_budget = 1u << 12,
                               std::uint64_t shift_budget = 1u << 20, std::size_t samples = 64, std::uint64_t seed = 1);

struct GoodnessRow {
  std::uint64_t index = 1;
  std::size_t n = 0;
  std::size_t k = 0;
  CodeDistance distance;
  Rational rate;               // k/n
  Rational relative_distance;  // d/n
  ClassMinimum class_minimum;
};

struct GoodnessLedger {
  Residue p = 2;
  std::vector<GoodnessRow> rows;
  /// Whether k/index stayed bounded away from zero over the computed covers.
  std::string hypothesis;
  std::string dichotomy;
};

struct GoodnessOptions {
  std::uint64_t distance_budget = 1u << 22;
  std::uint64_t class_budget = 1u << 12;
  std::uint64_t shift_budget = 1u << 20;
  std::size_t samples = 64;
  std::uint64_t seed = 1;
};

/// One row per cover (all covers of one presentation). `largeness_found`
/// selects the dichotomy note when known.
GoodnessLedger goodness_ledger(const std::vector<CosetTable>& covers, Residue p, const GoodnessOptions& options = {},
                               std::optional<bool> largeness_found = std::nullopt);

}  // namespace homgrowth
