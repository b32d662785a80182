#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homgrowth/errors.hpp"
#include "homgrowth/fplinalg.hpp"
#include "oracles.hpp"

using namespace homgrowth;

namespace {

std::vector<std::vector<std::int64_t>> random_rows(std::mt19937_64& rng, std::size_t r, std::size_t c, Residue p) {
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  std::bernoulli_distribution sparse(0.4);
  std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(c));
  for (auto& row : rows)
    for (auto& x : row) x = sparse(rng) ? 0 : d(rng);
  return rows;
}

}  // namespace

TEST_CASE("primes and modular helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(require_prime(4, "test"), InputError);
  CHECK(reduce_mod(-7, 5) == 3);
  for (Residue p : {2u, 3u, 5u, 7u, 13u})
    for (Residue a = 1; a < p; ++a) CHECK(std::uint64_t{a} * inverse_mod(a, p) % p == 1);
  CHECK(pow_u64(3, 4) == 81);
}

TEST_CASE("row reduction gives a reduced echelon form") {
  const auto m = MatrixFp::from_rows(3, 4, {{1, 2, 0, 1}, {2, 1, 0, 2}, {0, 0, 1, 1}});
  const auto e = row_reduce(m);
  CHECK(e.rank() == 2);
  CHECK(e.pivot_cols == std::vector<std::size_t>{0, 2});
  CHECK(e.reduced.at(0, 0) == 1);
  CHECK(e.reduced.at(1, 0) == 0);
  CHECK(e.reduced.at(0, 2) == 0);
  CHECK(e.reduced.row_vector(2) == VectorFp{0, 0, 0, 0});
}

TEST_CASE("rank matches an independent elimination on random matrices") {
  std::mt19937_64 rng(11);
  for (Residue p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
      const auto rows = random_rows(rng, r, c, p);
      const auto m = MatrixFp::from_rows(p, c, rows);
      REQUIRE(rank(m) == oracle::rank(rows, p));
      CHECK(rank(m.transpose()) == rank(m));
    }
  }
}

TEST_CASE("kernel basis vectors are independent and annihilated") {
  std::mt19937_64 rng(12);
  for (Residue p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
      const auto m = MatrixFp::from_rows(p, c, random_rows(rng, r, c, p));
      const auto ker = kernel_basis(m);
      CHECK(ker.size() + rank(m) == c);
      for (const auto& v : ker) CHECK(hamming_weight(m.apply(v)) == 0);
      if (!ker.empty()) CHECK(rank(MatrixFp::from_vectors(p, c, ker)) == ker.size());
    }
  }
}

TEST_CASE("solve_in_span finds coefficients exactly when the target is in the row space") {
  std::mt19937_64 rng(13);
  const Residue p = 5;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    const auto m = MatrixFp::from_rows(p, c, random_rows(rng, r, c, p));
    VectorFp coeffs(r);
    for (auto& x : coeffs) x = rng() % p;
    const auto target = m.apply_transpose(coeffs);
    const auto x = solve_in_span(m, target);
    REQUIRE(x);
    CHECK(m.apply_transpose(*x) == target);

    VectorFp other(c);
    for (auto& v : other) v = rng() % p;
    SpanBuilder span(p, c);
    for (std::size_t i = 0; i < r; ++i) span.add(m.row(i));
    CHECK(solve_in_span(m, other).has_value() == span.contains(other));
  }
}

TEST_CASE("span builder tracks dimension") {
  SpanBuilder span(3, 3);
  CHECK(span.add(VectorFp{1, 2, 0}));
  CHECK_FALSE(span.add(VectorFp{2, 1, 0}));
  CHECK(span.add(VectorFp{0, 0, 1}));
  CHECK(span.dimension() == 2);
  CHECK(span.contains(VectorFp{1, 2, 2}));
  CHECK_FALSE(span.contains(VectorFp{0, 1, 0}));
}

TEST_CASE("multiplication and transpose agree with apply") {
  const auto a = MatrixFp::from_rows(7, 3, {{1, 2, 3}, {4, 5, 6}});
  const auto b = MatrixFp::from_rows(7, 2, {{1, 0}, {0, 1}, {1, 1}});
  const auto ab = a.multiply(b);
  CHECK(ab.at(0, 0) == 4);
  CHECK(ab.at(0, 1) == 5);
  CHECK(ab.at(1, 0) == 3);
  CHECK(ab.at(1, 1) == 4);
  CHECK(a.transpose().transpose() == a);
  CHECK(MatrixFp::identity(7, 3).multiply(b) == b);
  CHECK(add_scaled(VectorFp{1, 2}, VectorFp{3, 4}, 2, 7) == VectorFp{0, 3});
}
