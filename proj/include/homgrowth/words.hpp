#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "homgrowth/fplinalg.hpp"

namespace homgrowth {

/// One signed generator occurrence: gen^sign with sign = ±1.
struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
  Letter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }
};

using Word = std::vector<Letter>;

/// Cancels adjacent inverse pairs until none remain (stack reduction).
Word free_reduce(const Word& w);

/// Freely reduces, then trims matching inverse letters from both ends.
Word cyclic_reduce(const Word& w);

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(Letter x, int exponent);

std::string word_to_string(const Word& w, const std::vector<std::string>& names);

/// Finite presentation ⟨generators | relators⟩. Relators are stored cyclically
/// reduced; relators that reduce to the empty word are dropped.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators);

  std::size_t generator_count() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<Word>& relators() const { return relators_; }
  /// Sum of relator lengths.
  std::size_t total_length() const { return total_length_; }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
  std::size_t total_length_ = 0;
};

/// Parses the text format
///     generators: a b c
///     rel: a b a^-1 b^-1
/// Blank lines and `#` comments are ignored; `name^k` accepts any nonzero
/// integer k. Unknown names and malformed lines raise InputError naming the line.
Presentation parse_presentation(std::string_view text);
/// Freely reduced word from `name` / `name^k` tokens; empty text is the identity.
Word parse_word(std::string_view text, const std::vector<std::string>& names);
Presentation load_presentation(const std::string& path);
std::string format_presentation(const Presentation& pres);

/// Relator-by-generator exponent-sum matrix reduced mod p.
MatrixFp abelianized_mod_p(const Presentation& pres, Residue p);

/// dim H_1(G; F_p) = generator_count − rank of the exponent-sum matrix.
std::size_t dp(const Presentation& pres, Residue p);

/// Generators (in index order, chosen greedily) whose images form a basis of
/// H_1(G; F_p).
std::vector<std::uint32_t> homology_basis_labels(const Presentation& pres, Residue p);

/// Checks that `labels` maps onto a basis of H_1(G; F_p).
bool is_homology_basis(const Presentation& pres, Residue p, const std::vector<std::uint32_t>& labels);

/// Action of the generators on {0..degree−1}; a homomorphism to Sym(degree)
/// once validated against a presentation.
struct FiniteQuotientSpec {
  std::uint32_t degree = 1;
  std::vector<std::vector<std::uint32_t>> images;

  /// Throws InputError unless every image is a bijection and every relator
  /// acts trivially on every point.
  void validate(const Presentation& pres) const;
  std::uint32_t act(std::uint32_t point, Letter x) const;
};

}  // namespace homgrowth
