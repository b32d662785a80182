#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "homgrowth/errors.hpp"
#include "homgrowth/growth.hpp"
#include "oracles.hpp"

using namespace homgrowth;

namespace {

std::shared_ptr<const Presentation> preset(const std::string& name) {
  return std::make_shared<const Presentation>(load_presentation(std::string(PRESENTATIONS_DIR) + "/" + name + ".txt"));
}

// Subgroups of index 4 lying in an index-2 subgroup, counted through
// transitive actions on {0,1,2,3}: each subgroup is the stabilizer of 0 in
// exactly 3! actions.
std::uint64_t brute_subnormal_index4(const Presentation& pres) {
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = pres.generator_count();
  std::vector<std::size_t> choice(n, 0);
  std::uint64_t actions = 0;
  while (true) {
    auto act = [&](int pt, const Letter& l) {
      const auto& s = perms[choice[l.gen]];
      if (l.sign > 0) return s[pt];
      for (int q = 0; q < 4; ++q)
        if (s[q] == pt) return q;
      return -1;
    };
    bool ok = true;
    for (const auto& r : pres.relators())
      for (int start = 0; start < 4 && ok; ++start) {
        int pt = start;
        for (const auto& l : r) pt = act(pt, l);
        ok = pt == start;
      }
    if (ok) {
      // Transitive?
      std::vector<bool> seen(4, false);
      std::vector<int> stack{0};
      seen[0] = true;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (std::uint32_t g = 0; g < n; ++g) {
          const int w = perms[choice[g]][v];
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
      const bool transitive = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
      bool blocks = false;
      for (int x = 1; x < 4 && transitive && !blocks; ++x) {
        auto block_of = [&](int v) { return v == 0 || v == x ? 0 : 1; };
        bool preserved = true;
        for (std::uint32_t g = 0; g < n && preserved; ++g)
          for (int a = 0; a < 4 && preserved; ++a)
            for (int b = 0; b < 4 && preserved; ++b)
              if (block_of(a) == block_of(b)) preserved = block_of(perms[choice[g]][a]) == block_of(perms[choice[g]][b]);
        blocks = preserved;
      }
      if (transitive && blocks) ++actions;
    }
    std::size_t i = 0;
    while (i < n && ++choice[i] == perms.size()) choice[i++] = 0;
    if (i == n) break;
  }
  return actions / 6;
}

const char* kPresets[] = {"z", "f2", "f3", "torus", "genus2", "rp2", "trefoil", "klein", "z3", "bs12", "z2_free_z2",
                          "z3_free_z3"};

}  // namespace

TEST_CASE("level-one counts") {
  for (const auto* name : kPresets) {
    for (Residue p : {2u, 3u, 5u}) {
      const auto pres = preset(name);
      const auto r = enumerate_subnormal(pres, p, 1);
      const auto homs = oracle::count_homs_to_zp(*pres, p);
      CAPTURE(name);
      CAPTURE(p);
      REQUIRE(r.ledger.levels.size() >= 1);
      const std::uint64_t expected = (homs - 1) / (p - 1);
      const std::uint64_t got = r.ledger.levels.size() > 1 ? r.ledger.levels[1].count : 0;
      CHECK(got == expected);
      CHECK(r.ledger.expected_level_one() == expected);
    }
  }
  CHECK(enumerate_subnormal(preset("f2"), 2, 1).ledger.levels[1].count == 3);
  CHECK(enumerate_subnormal(preset("torus"), 3, 1).ledger.levels[1].count == 4);
}

TEST_CASE("index-4 subnormal counts match a permutation-action count") {
  for (const auto* name : {"f2", "torus", "klein", "z2_free_z2", "z", "trefoil", "rp2"}) {
    const auto pres = preset(name);
    const auto r = enumerate_subnormal(pres, 2, 2);
    const std::uint64_t got = r.ledger.levels.size() > 2 ? r.ledger.levels[2].count : 0;
    CAPTURE(name);
    CHECK(got == brute_subnormal_index4(*pres));
  }
  CHECK(enumerate_subnormal(preset("f2"), 2, 2).ledger.levels[2].count == 19);
  CHECK(enumerate_subnormal(preset("torus"), 2, 2).ledger.levels[2].count == 7);
}

TEST_CASE("Z has one subgroup at each level") {
  const auto r = enumerate_subnormal(preset("z"), 2, 4);
  REQUIRE(r.ledger.levels.size() == 5);
  for (const auto& l : r.ledger.levels) {
    CHECK(l.count == 1);
    CHECK(l.r == 1);
  }
}

TEST_CASE("ledger inequalities and gradient monotonicity") {
  for (const auto* name : {"f2", "genus2", "torus", "klein", "z3", "trefoil"}) {
    for (Residue p : {2u, 3u}) {
      const auto r = enumerate_subnormal(preset(name), p, p == 2 ? 3 : 2);
      CAPTURE(name);
      CAPTURE(p);
      CHECK(r.ledger.count_inequality_holds());
      CHECK(r.ledger.homology_bound_holds());
      CHECK(r.gradient_violations == 0);
      CHECK(r.subnormal_bound_violations == 0);
      for (const auto& node : r.nodes) {
        CHECK(node.table.index() == pow_u64(p, static_cast<unsigned>(node.level)));
        CHECK(node.dp == homomorphism_basis(node.table, p).size());
        for (auto parent : node.parents) CHECK(is_normal_in(node.table, r.nodes[parent].table));
      }
    }
  }
}

TEST_CASE("surface covers have (d_p - 2)/index = 2") {
  const auto r = enumerate_subnormal(preset("genus2"), 2, 2);
  for (const auto& node : r.nodes) {
    const auto index = static_cast<std::int64_t>(node.table.index());
    CHECK(Rational(static_cast<std::int64_t>(node.dp) - 2, index) == Rational(2));
  }
}

TEST_CASE("budgets truncate the enumeration") {
  GrowthOptions options;
  options.max_subgroups = 10;
  const auto r = enumerate_subnormal(preset("f3"), 2, 3, options);
  CHECK(r.ledger.truncated);
  CHECK_FALSE(r.ledger.truncation_note.empty());
  options = {};
  options.max_cosets = 4;
  const auto s = enumerate_subnormal(preset("z"), 2, 5, options);
  CHECK(s.ledger.truncated);
  CHECK(s.ledger.levels.size() == 3);
}

TEST_CASE("chains") {
  const auto r = enumerate_subnormal(preset("f2"), 2, 3);
  const auto chain = max_gradient_chain(r);
  CHECK(chain.tables.size() == 4);
  CHECK(chain.validate().fully_subnormal);
  const auto g = gradient(chain);
  CHECK(g.non_increasing);
  // F2 covers are free: d = index + 1, gradient exactly 1.
  for (const auto& x : g.gradient) CHECK(x == Rational(1));

  const auto greedy = greedy_gradient_chain(preset("torus"), 3, 2);
  CHECK(greedy.tables.size() == 3);
  CHECK(gradient(greedy).dp == std::vector<std::size_t>{2, 2, 2});
  CHECK(gradient(greedy).gradient.back() == Rational(1, 9));
}

TEST_CASE("growth diagnostics") {
  const auto r = enumerate_subnormal(preset("f2"), 2, 3);
  const auto d = growth_diagnostics(r.ledger, Rational(1));
  CHECK(d.upper_bound_holds);
  REQUIRE(d.lower_bounds.size() == 3);
  for (const auto& b : d.lower_bounds) CHECK(b.holds);
  // Level 1: exponent floor(1*1)+1 = 2, bound 3.
  CHECK(d.lower_bounds[0].value == 3u);
  CHECK_THROWS_AS(growth_diagnostics(enumerate_subnormal(preset("f2"), 2, 0).ledger), InputError);
}
