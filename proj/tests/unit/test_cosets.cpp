#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "homgrowth/complexes.hpp"
#include "homgrowth/cosets.hpp"
#include "homgrowth/errors.hpp"
#include "oracles.hpp"
#include "random_complexes.hpp"

using namespace homgrowth;

namespace {

std::shared_ptr<const Presentation> preset(const std::string& name) {
  return std::make_shared<const Presentation>(load_presentation(std::string(PRESENTATIONS_DIR) + "/" + name + ".txt"));
}

std::shared_ptr<const Presentation> s3() {
  return std::make_shared<const Presentation>(parse_presentation("generators: a b\nrel: a^2\nrel: b^3\nrel: a b a b\n"));
}

// Same subgroup with the non-basepoint cosets renumbered by `perm`.
CosetTable relabel(const CosetTable& t, const std::vector<std::uint32_t>& perm) {
  std::vector<std::vector<std::uint32_t>> action(t.generator_count(), std::vector<std::uint32_t>(t.index()));
  for (std::uint32_t s = 0; s < t.generator_count(); ++s)
    for (std::uint32_t c = 0; c < t.index(); ++c) action[s][perm[c]] = perm[t.perm(s)[c]];
  return CosetTable(t.presentation_ptr(), action);
}

// Random chain G > H1 > ... of kernels, stopping before index passes `limit`.
std::vector<CosetTable> random_chain(std::mt19937_64& rng, std::shared_ptr<const Presentation> pres, Residue p,
                                     std::size_t limit) {
  std::vector<CosetTable> chain{whole_group(pres)};
  while (chain.back().index() * p <= limit) {
    auto kid = testgen::random_kernel(rng, chain.back(), p);
    if (!kid) break;
    chain.push_back(std::move(*kid));
  }
  return chain;
}

}  // namespace

TEST_CASE("coset enumeration on finite quotients") {
  auto g = s3();
  CHECK(todd_coxeter(g, {}).index() == 6);
  CHECK(todd_coxeter(g, {parse_word("a", g->generator_names())}).index() == 3);
  CHECK(todd_coxeter(g, {parse_word("b", g->generator_names())}).index() == 2);
  auto torus = preset("torus");
  const auto t = todd_coxeter(torus, {parse_word("a^3", torus->generator_names()), parse_word("b^3", torus->generator_names())});
  CHECK(t.index() == 9);
  CHECK(t.contains(parse_word("a^3 b^-3", torus->generator_names())));
  CHECK_FALSE(t.contains(parse_word("a b", torus->generator_names())));
}

TEST_CASE("coset enumeration respects its budget") {
  auto f2 = preset("f2");
  CHECK_THROWS_AS(todd_coxeter(f2, {parse_word("a", f2->generator_names()), parse_word("b^2", f2->generator_names())}, 64),
                  BudgetExceeded);
  CHECK_THROWS_AS(todd_coxeter(preset("torus"), {}, 100), BudgetExceeded);
  // Index-8 subgroups of F3 are free of rank 17: 2^17 - 1 kernels.
  auto f3 = preset("f3");
  auto t = whole_group(f3);
  for (int i = 0; i < 3; ++i) t = index_p_normal_subgroups(t, 2).front();
  CHECK_THROWS_AS(index_p_normal_subgroups(t, 2, 1000), BudgetExceeded);
}

TEST_CASE("coset tables reject invalid actions") {
  auto torus = preset("torus");
  CHECK_THROWS_AS(CosetTable(torus, {{0, 0}, {1, 0}}), InputError);  // not a bijection
  CHECK_THROWS_AS(CosetTable(torus, {{0, 1}, {0, 1}}), InputError);  // not transitive
  auto g = s3();
  CHECK_THROWS_AS(CosetTable(g, {{1, 2, 0}, {0, 1, 2}}), InputError);  // a^2 fails
}

TEST_CASE("from_quotient builds the point stabilizer") {
  auto g = s3();
  FiniteQuotientSpec spec{3, {{1, 0, 2}, {1, 2, 0}}};
  const auto t = from_quotient(g, spec, 2);
  CHECK(t.index() == 3);
  CHECK(t.contains(parse_word("a", g->generator_names())));
}

TEST_CASE("Schreier generators lie in the subgroup and count index*(n-1)+1") {
  std::mt19937_64 rng(21);
  for (const auto* name : {"f2", "f3", "genus2", "torus", "trefoil"}) {
    auto pres = preset(name);
    for (Residue p : {2u, 3u}) {
      for (const auto& t : random_chain(rng, pres, p, 27)) {
        const auto gens = schreier_generators(t);
        CHECK(gens.size() == t.index() * (pres->generator_count() - 1) + 1);
        for (const auto& w : gens) CHECK(t.contains(w));
        const auto tree = spanning_tree(t);
        for (std::uint32_t c = 0; c < t.index(); ++c) CHECK(t.trace(0, tree.transversal[c]) == c);
      }
    }
  }
}

TEST_CASE("Reidemeister-Schreier and the covering complex give the same d_p") {
  std::mt19937_64 rng(22);
  for (const auto* name : {"f2", "genus2", "torus", "klein", "trefoil", "bs12", "z2_free_z2", "z3_free_z3", "z3"}) {
    auto pres = preset(name);
    for (Residue p : {2u, 3u, 5u}) {
      for (const auto& t : random_chain(rng, pres, p, 32)) {
        const auto rs = reidemeister_schreier(t);
        const auto via_rs = dp(rs, p);
        CAPTURE(name);
        CAPTURE(p);
        CHECK(via_rs == dp(covering_complex(t), p));
        CHECK(via_rs == homomorphism_basis(t, p).size());
        // Homomorphism count on the rewritten presentation, when small enough.
        if (std::pow(double(p), double(rs.generator_count())) <= 2e5)
          CHECK(pow_u64(p, static_cast<unsigned>(via_rs)) == oracle::count_homs_to_zp(rs, p));
      }
    }
  }
}

TEST_CASE("kernel tables contain exactly the words the homomorphism kills") {
  std::mt19937_64 rng(23);
  auto pres = preset("genus2");
  const auto g = whole_group(pres);
  for (Residue p : {2u, 3u}) {
    const auto basis = homomorphism_basis(g, p);
    REQUIRE(basis.size() == 4);
    for (const auto& hom : basis) {
      const auto k = kernel_table(g, p, hom);
      CHECK(k.index() == p);
      // On the index-1 table the Schreier generators are the generators.
      for (int trial = 0; trial < 50; ++trial) {
        Word x;
        std::int64_t value = 0;
        for (int i = 0; i < 8; ++i) {
          const Letter l{static_cast<std::uint32_t>(rng() % 4), rng() % 2 ? std::int8_t{1} : std::int8_t{-1}};
          x.push_back(l);
          value += l.sign * static_cast<std::int64_t>(hom[l.gen]);
        }
        CHECK(k.contains(x) == (oracle::mod(value, p) == 0));
      }
      CHECK(is_normal_in(k, g));
    }
  }
}

TEST_CASE("index-p normal subgroups are counted by (p^d - 1)/(p - 1) and pairwise distinct") {
  for (const auto* name : {"f2", "f3", "genus2", "torus", "z3"}) {
    auto pres = preset(name);
    for (Residue p : {2u, 3u, 5u}) {
      const auto g = whole_group(pres);
      const auto d = dp(*pres, p);
      const auto kids = index_p_normal_subgroups(g, p);
      CHECK(kids.size() == (pow_u64(p, static_cast<unsigned>(d)) - 1) / (p - 1));
      std::set<std::string> keys;
      for (const auto& k : kids) {
        keys.insert(canonical_key(k, p));
        CHECK(is_normal_in(k, g));
        CHECK(is_subgroup_of(k, g));
      }
      CHECK(keys.size() == kids.size());
    }
  }
}

TEST_CASE("canonical keys ignore coset numbering") {
  std::mt19937_64 rng(24);
  auto pres = preset("f2");
  for (const auto& t : random_chain(rng, pres, 2, 16)) {
    const auto key = canonical_key(t, 2);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::uint32_t> perm(t.index());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin() + 1, perm.end(), rng);
      const auto moved = relabel(t, perm);
      CHECK(canonical_key(moved, 2) == key);
      CHECK(table_from_canonical(pres, canonical_form(moved)).perm(0) == t.standardized().perm(0));
    }
  }
}

TEST_CASE("normality and projections") {
  auto g = s3();
  const auto whole = whole_group(g);
  const auto a_sub = todd_coxeter(g, {parse_word("a", g->generator_names())});
  const auto b_sub = todd_coxeter(g, {parse_word("b", g->generator_names())});
  const auto trivial = todd_coxeter(g, {});
  CHECK_FALSE(is_normal_in(a_sub, whole));
  CHECK(is_normal_in(b_sub, whole));
  CHECK(is_subgroup_of(trivial, a_sub));
  CHECK_FALSE(is_subgroup_of(a_sub, b_sub));
  const auto proj = coset_projection(trivial, b_sub);
  REQUIRE(proj);
  CHECK(std::count(proj->begin(), proj->end(), 0u) == 3);

  // Deck transformations of the regular cover are fixed-point free.
  const auto deck = deck_transformation(trivial, parse_word("b", g->generator_names()));
  for (std::uint32_t c = 0; c < 6; ++c) CHECK(deck[c] != c);
}

TEST_CASE("chain validation") {
  auto g = s3();
  const auto whole = whole_group(g);
  const auto b_sub = todd_coxeter(g, {parse_word("b", g->generator_names())});
  const auto a_sub = todd_coxeter(g, {parse_word("a", g->generator_names())});
  const auto trivial = todd_coxeter(g, {});
  SubnormalChain ok{2, {whole, b_sub}};
  CHECK(ok.validate().fully_subnormal);
  CHECK(ok.step_indices() == std::vector<std::uint64_t>{2});
  SubnormalChain non_normal_first{3, {whole, a_sub}};
  const auto v = non_normal_first.validate();
  CHECK_FALSE(v.first_step_normal);
  SubnormalChain wrong_prime{2, {whole, a_sub}};
  CHECK_THROWS_AS(wrong_prime.validate(), InputError);
  SubnormalChain not_nested{2, {whole, b_sub, a_sub}};
  CHECK_THROWS_AS(not_nested.validate(), InputError);
  SubnormalChain step3{3, {whole, b_sub, trivial}};
  CHECK_THROWS_AS(step3.validate(), InputError);
}
