#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "homgrowth/fplinalg.hpp"

namespace homgrowth {

/// Element (shift, lamps) of Z/p ≀ Z: a lamp configuration on Z with finite
/// support and a shift. Lamp positions are capped at |position| ≤ 10⁶.
struct LamplighterElement {
  std::int64_t shift = 0;
  std::map<std::int64_t, Residue> lamps;  // nonzero values only

  friend bool operator==(const LamplighterElement&, const LamplighterElement&) = default;
};

constexpr std::int64_t kLampLimit = 1000000;

/// (s, f)·(t, g) = (s + t, f + g shifted by s). Throws InputError when a lamp
/// leaves the position cap.
LamplighterElement multiply(const LamplighterElement& x, const LamplighterElement& y, Residue p);
LamplighterElement inverse(const LamplighterElement& x, Residue p);
LamplighterElement lamplighter_identity();
/// a: the unit shift.
LamplighterElement lamplighter_a();
/// b: one lamp at position 0.
LamplighterElement lamplighter_b();
/// Word in a, A = a⁻¹, b, B = b⁻¹.
LamplighterElement lamplighter_word(const std::string& word, Residue p);

/// True when x lies in G_i, the preimage of pⁱZ under the shift.
bool in_level(const LamplighterElement& x, unsigned i, Residue p);

/// Sum of lamp values at positions ≡ j mod pⁱ. Throws InputError unless
/// 0 ≤ j < pⁱ and x ∈ G_i.
Residue phi_j(const LamplighterElement& x, unsigned i, std::uint64_t j, Residue p);

/// Matrix of φ_j (rows) on the lamps at positions 0..pⁱ−1 (columns).
MatrixFp phi_evaluation_matrix(unsigned i, Residue p);

/// pⁱ, after checking that the evaluation matrix is invertible; throws
/// VerificationFailure otherwise.
std::uint64_t dp_lower_bound(unsigned i, Residue p);

}  // namespace homgrowth
