#include "homgrowth/lamplighter.hpp"

#include "homgrowth/errors.hpp"

namespace homgrowth {

namespace {

void check_position(std::int64_t position) {
  if (position > kLampLimit || position < -kLampLimit)
    throw InputError("lamplighter", "lamp position " + std::to_string(position) + " outside the cap of 10^6");
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const auto r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t level_modulus(unsigned i, Residue p) {
  const auto m = pow_u64(p, i);
  if (m > static_cast<std::uint64_t>(kLampLimit) * 4) throw InputError("lamplighter", "level too large");
  return m;
}

}  // namespace

LamplighterElement multiply(const LamplighterElement& x, const LamplighterElement& y, Residue p) {
  if (x.shift > kLampLimit || x.shift < -kLampLimit || y.shift > kLampLimit || y.shift < -kLampLimit)
    throw InputError("lamplighter", "shift outside the cap of 10^6");
  LamplighterElement out{x.shift + y.shift, x.lamps};
  for (const auto& [position, value] : y.lamps) {
    const auto moved = position + x.shift;
    check_position(moved);
    const Residue sum = (out.lamps[moved] + value) % p;
    if (sum == 0)
      out.lamps.erase(moved);
    else
      out.lamps[moved] = sum;
  }
  return out;
}

LamplighterElement inverse(const LamplighterElement& x, Residue p) {
  // (s, f)⁻¹ = (−s, −f shifted by −s).
  LamplighterElement out{-x.shift, {}};
  for (const auto& [position, value] : x.lamps) {
    check_position(position - x.shift);
    out.lamps[position - x.shift] = (p - value) % p;
  }
  return out;
}

LamplighterElement lamplighter_identity() { return {}; }
LamplighterElement lamplighter_a() { return {1, {}}; }
LamplighterElement lamplighter_b() { return {0, {{0, 1}}}; }

LamplighterElement lamplighter_word(const std::string& word, Residue p) {
  require_prime(p, "lamplighter");
  LamplighterElement x;
  for (char c : word) {
    switch (c) {
      case 'a': x = multiply(x, lamplighter_a(), p); break;
      case 'A': x = multiply(x, inverse(lamplighter_a(), p), p); break;
      case 'b': x = multiply(x, lamplighter_b(), p); break;
      case 'B': x = multiply(x, inverse(lamplighter_b(), p), p); break;
      case ' ': break;
      default: throw InputError("lamplighter", std::string("unknown letter '") + c + "'");
    }
  }
  return x;
}

bool in_level(const LamplighterElement& x, unsigned i, Residue p) {
  return floor_mod(x.shift, static_cast<std::int64_t>(level_modulus(i, p))) == 0;
}

Residue phi_j(const LamplighterElement& x, unsigned i, std::uint64_t j, Residue p) {
  require_prime(p, "lamplighter");
  const auto m = level_modulus(i, p);
  if (j >= m) throw InputError("lamplighter", "phi index must lie in [0, p^i)");
  if (!in_level(x, i, p)) throw InputError("lamplighter", "element is outside G_i: shift not divisible by p^i");
  std::uint64_t sum = 0;
  for (const auto& [position, value] : x.lamps)
    if (static_cast<std::uint64_t>(floor_mod(position, static_cast<std::int64_t>(m))) == j) sum += value;
  return static_cast<Residue>(sum % p);
}

MatrixFp phi_evaluation_matrix(unsigned i, Residue p) {
  require_prime(p, "lamplighter");
  const auto m = level_modulus(i, p);
  MatrixFp out(p, m, m);
  for (std::uint64_t c = 0; c < m; ++c) {
    const LamplighterElement lamp{0, {{static_cast<std::int64_t>(c), 1}}};
    for (std::uint64_t j = 0; j < m; ++j) out.set(j, c, phi_j(lamp, i, j, p));
  }
  return out;
}

std::uint64_t dp_lower_bound(unsigned i, Residue p) {
  const auto m = phi_evaluation_matrix(i, p);
  if (rank(m) != m.rows()) throw VerificationFailure("lamplighter", "phi evaluation matrix is singular");
  return m.rows();
}

}  // namespace homgrowth
