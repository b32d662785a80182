#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homgrowth/errors.hpp"
#include "homgrowth/words.hpp"
#include "oracles.hpp"

using namespace homgrowth;

namespace {

const std::vector<std::string> kAB{"a", "b"};

Word w(const char* text) { return parse_word(text, kAB); }

const char* kPresets[] = {"z", "f2", "f3", "torus", "genus2", "rp2", "trefoil", "klein", "z3", "bs12", "z2_free_z2",
                          "z3_free_z3"};

Presentation preset(const std::string& name) {
  return load_presentation(std::string(PRESENTATIONS_DIR) + "/" + name + ".txt");
}

}  // namespace

TEST_CASE("free and cyclic reduction") {
  CHECK(free_reduce(Word{{0, 1}, {1, 1}, {1, -1}, {0, -1}}).empty());
  CHECK(free_reduce(Word{{0, 1}, {1, 1}, {1, -1}, {1, 1}}) == Word{{0, 1}, {1, 1}});
  CHECK(cyclic_reduce(w("b a a b^-1")) == w("a^2"));
  CHECK(cyclic_reduce(w("a b a^-1")) == w("b"));
  CHECK(inverse(w("a b^2")) == w("b^-2 a^-1"));
  CHECK(concat(w("a b"), w("b^-1 a")).size() == 4);
  CHECK(free_reduce(concat(w("a b"), w("b^-1 a"))) == w("a^2"));
  CHECK(power({1, 1}, -3) == w("b^-3"));
  CHECK(word_to_string(w("a b^-1 b^-1"), kAB) == "a b^-1 b^-1");
}

TEST_CASE("reduction is idempotent and respects inverses on random words") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Word x;
    const auto len = rng() % 12;
    for (std::size_t i = 0; i < len; ++i) x.push_back({static_cast<std::uint32_t>(rng() % 3), rng() % 2 ? std::int8_t{1} : std::int8_t{-1}});
    const auto r = free_reduce(x);
    CHECK(free_reduce(r) == r);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) CHECK_FALSE(r[i] == r[i + 1].inverse());
    CHECK(free_reduce(concat(x, inverse(x))).empty());
    const auto c = cyclic_reduce(x);
    if (c.size() >= 2) CHECK_FALSE(c.front() == c.back().inverse());
  }
}

TEST_CASE("parser accepts comments, blank lines and powers") {
  const auto pres = parse_presentation("# torus\n\ngenerators: a b\nrel: a b a^-1 b^-1   # commutator\n");
  CHECK(pres.generator_count() == 2);
  REQUIRE(pres.relators().size() == 1);
  CHECK(pres.total_length() == 4);
  CHECK(parse_presentation(format_presentation(pres)) == pres);
  CHECK(parse_presentation("generators: x\nrel: x^3\n").relators()[0].size() == 3);
  // A relator that reduces away is dropped.
  CHECK(parse_presentation("generators: a b\nrel: a a^-1\n").relators().empty());
}

TEST_CASE("parser errors name the line") {
  CHECK_THROWS_AS(parse_presentation("rel: a\n"), InputError);
  CHECK_THROWS_WITH_AS(parse_presentation("generators: a b\nrel: a c\n"), doctest::Contains("line 2"), InputError);
  CHECK_THROWS_AS(parse_presentation("generators: a b\nrel: a^0\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("generators: a b\nrel: a^x\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("generators: a b\nbogus line\n"), InputError);
  CHECK_THROWS_AS(load_presentation("/nonexistent/presentation.txt"), InputError);
  CHECK_THROWS_AS(parse_word("a c", kAB), InputError);
  CHECK(parse_word("", kAB).empty());
}

TEST_CASE("d_p agrees with counting homomorphisms to Z/p") {
  for (const auto* name : kPresets) {
    const auto pres = preset(name);
    for (Residue p : {2u, 3u, 5u}) {
      const auto homs = oracle::count_homs_to_zp(pres, p);
      CAPTURE(name);
      CAPTURE(p);
      CHECK(pow_u64(p, static_cast<unsigned>(dp(pres, p))) == homs);
    }
  }
  CHECK(dp(preset("genus2"), 2) == 4);
  CHECK(dp(preset("rp2"), 2) == 1);
  CHECK(dp(preset("rp2"), 3) == 0);
  CHECK(dp(preset("trefoil"), 2) == 1);
  CHECK(dp(preset("bs12"), 3) == 1);
  CHECK(dp(preset("bs12"), 2) == 1);
}

TEST_CASE("d_p on random presentations agrees with homomorphism counts") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pres = oracle::random_presentation(rng, 1 + rng() % 3, rng() % 3, 6);
    for (Residue p : {2u, 3u}) CHECK(pow_u64(p, static_cast<unsigned>(dp(pres, p))) == oracle::count_homs_to_zp(pres, p));
  }
}

TEST_CASE("homology basis labels") {
  const auto pres = preset("genus2");
  const auto labels = homology_basis_labels(pres, 2);
  CHECK(labels.size() == 4);
  CHECK(is_homology_basis(pres, 2, labels));
  CHECK_FALSE(is_homology_basis(pres, 2, {0, 1, 2}));
  const auto bs = preset("bs12");
  // b a b^-1 = a^2 kills a in the abelianization.
  CHECK(homology_basis_labels(bs, 3) == std::vector<std::uint32_t>{1});
  CHECK(is_homology_basis(bs, 3, {1}));
  CHECK_FALSE(is_homology_basis(bs, 3, {0}));
}

TEST_CASE("finite quotient specs are validated") {
  const auto pres = preset("torus");
  FiniteQuotientSpec ok{3, {{1, 2, 0}, {0, 1, 2}}};
  CHECK_NOTHROW(ok.validate(pres));
  CHECK(ok.act(0, {0, 1}) == 1);
  CHECK(ok.act(0, {0, -1}) == 2);
  FiniteQuotientSpec not_bijective{3, {{1, 1, 0}, {0, 1, 2}}};
  CHECK_THROWS_AS(not_bijective.validate(pres), InputError);
  // S3 does not satisfy the commutator relator.
  FiniteQuotientSpec s3{3, {{1, 0, 2}, {0, 2, 1}}};
  CHECK_THROWS_AS(s3.validate(pres), InputError);
}
