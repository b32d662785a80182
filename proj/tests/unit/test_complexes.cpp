#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homgrowth/complexes.hpp"
#include "homgrowth/errors.hpp"
#include "oracles.hpp"

using namespace homgrowth;

namespace {

std::shared_ptr<const Presentation> preset(const std::string& name) {
  return std::make_shared<const Presentation>(load_presentation(std::string(PRESENTATIONS_DIR) + "/" + name + ".txt"));
}

std::vector<CosetTable> covers(std::shared_ptr<const Presentation> pres, Residue p) {
  std::vector<CosetTable> out{whole_group(pres)};
  for (auto& k : index_p_normal_subgroups(out[0], p)) {
    out.push_back(k);
    if (out.size() > 4) break;
  }
  return out;
}

std::vector<std::vector<std::int64_t>> dense(const MatrixFp& m) {
  std::vector<std::vector<std::int64_t>> rows(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
  return rows;
}

}  // namespace

TEST_CASE("complex construction checks its input") {
  CHECK_THROWS_AS(TwoComplex(1, {{0, 1}}, {}), InputError);
  CHECK_THROWS_AS(TwoComplex(2, {{0, 1}}, {{{0, 1}}}), InputError);  // not closed
  CHECK_THROWS_AS(TwoComplex(1, {{0, 0}}, {{}}), InputError);
  CHECK_NOTHROW(TwoComplex(1, {{0, 0}}, {{{0, 1}, {0, 1}}}));
}

TEST_CASE("homology of standard presentation complexes") {
  struct Case {
    const char* name;
    Residue p;
    std::size_t d1;
  };
  for (const auto& c : {Case{"torus", 2, 2}, Case{"torus", 3, 2}, Case{"klein", 2, 2}, Case{"klein", 3, 1},
                        Case{"rp2", 2, 1}, Case{"rp2", 3, 0}, Case{"genus2", 5, 4}, Case{"f3", 2, 3}}) {
    const auto k = presentation_complex(*preset(c.name));
    CAPTURE(c.name);
    CHECK(dp(k, c.p) == c.d1);
    CHECK(homology_profile(k, c.p).d0 == 1);
  }
  // H2 of the torus and of the projective plane mod 2.
  const auto torus = presentation_complex(*preset("torus"));
  CHECK(torus.two_cell_count() - homology_profile(torus, 3).rank_boundary2 == 1);
  const auto rp2 = presentation_complex(*preset("rp2"));
  CHECK(rp2.two_cell_count() - homology_profile(rp2, 2).rank_boundary2 == 1);
  CHECK(rp2.two_cell_count() - homology_profile(rp2, 3).rank_boundary2 == 0);
}

TEST_CASE("boundary matrices compose to zero and ranks match an independent elimination") {
  for (const auto* name : {"torus", "genus2", "klein", "trefoil", "z3", "bs12"}) {
    auto pres = preset(name);
    for (Residue p : {2u, 3u}) {
      for (const auto& t : covers(pres, p)) {
        const auto k = covering_complex(t);
        const auto b1 = boundary1(k, p);
        const auto b2 = boundary2(k, p);
        CHECK(b1.multiply(b2).is_zero());
        CHECK(coboundary0(k, p) == b1.transpose());
        CHECK(coboundary1(k, p) == b2.transpose());
        const auto prof = homology_profile(k, p);
        CHECK(prof.rank_boundary1 == oracle::rank(dense(b1), p));
        CHECK(prof.rank_boundary2 == oracle::rank(dense(b2), p));
        // Betti numbers and cell counts give the same Euler characteristic.
        const auto b0 = static_cast<std::int64_t>(prof.d0);
        const auto bb1 = static_cast<std::int64_t>(prof.d1);
        const auto b2n = static_cast<std::int64_t>(k.two_cell_count() - prof.rank_boundary2);
        CHECK(b0 - bb1 + b2n == k.euler_characteristic());
        CHECK(k.euler_characteristic() ==
              static_cast<std::int64_t>(t.index()) * presentation_complex(*pres).euler_characteristic());
        CHECK(prof.d0 == 1);
      }
    }
  }
}

TEST_CASE("covering complex checks its base") {
  auto torus = preset("torus");
  const auto g = whole_group(torus);
  CHECK_NOTHROW(covering_complex(presentation_complex(*torus), g));
  CHECK_THROWS_AS(covering_complex(presentation_complex(*preset("klein")), g), InputError);
}

TEST_CASE("cut decomposition covers the complex with closed pieces") {
  std::mt19937_64 rng(31);
  auto pres = preset("genus2");
  for (const auto& t : covers(pres, 2)) {
    const auto k = covering_complex(t);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<bool> d(k.zero_cell_count());
      if (d.size() < 2) break;
      for (std::size_t v = 0; v < d.size(); ++v) d[v] = rng() % 2;
      d[0] = true;
      d[1] = false;
      const auto cut = cut_decomposition(k, d);
      CHECK(cut.a.is_closed(k));
      CHECK(cut.b.is_closed(k));
      CHECK(cut.c == subcomplex_intersection(cut.a, cut.b));
      CHECK(subcomplex_union(cut.a, cut.b) == SubComplex::full(k));
      for (std::uint32_t v = 0; v < d.size(); ++v) {
        if (d[v]) CHECK(cut.a.zero[v]);
        else CHECK(cut.b.zero[v]);
      }
    }
  }
}

TEST_CASE("induced complexes keep the homology of the subcomplex") {
  std::mt19937_64 rng(32);
  auto pres = preset("torus");
  const auto t = index_p_normal_subgroups(whole_group(pres), 2).front();
  const auto k = covering_complex(t);
  const auto kk = covering_complex(index_p_normal_subgroups(t, 2).front());
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<bool> d(kk.zero_cell_count());
    for (std::size_t v = 0; v < d.size(); ++v) d[v] = rng() % 2;
    d[0] = true;
    d[1] = false;
    const auto cut = cut_decomposition(kk, d);
    const auto ind = induced_complex(kk, cut.a);
    CHECK(dp(ind.complex, 2) == dp(kk, cut.a, 2));
    CHECK(ind.complex.one_cell_count() == cut.a.count1());
    for (std::uint32_t e = 0; e < ind.one_to_parent.size(); ++e) CHECK(ind.one_from_parent[ind.one_to_parent[e]] == e);
  }
  CHECK(h1_image_rank(k, {}, 2) == 0);
  const auto full = SubComplex::full(k);
  CHECK(h1_image_rank(k, {&full}, 2) == dp(k, 2));
}

TEST_CASE("cycle basis spans the kernel of the boundary map") {
  const auto k = covering_complex(index_p_normal_subgroups(whole_group(preset("f2")), 3).front());
  const auto z = cycle_basis(k, 3);
  CHECK(z.size() == k.one_cell_count() - k.zero_cell_count() + 1);
  for (const auto& v : z) CHECK(hamming_weight(boundary1(k, 3).apply(v)) == 0);
}

TEST_CASE("labelled subgraph of a basis is connected in a p-power cover") {
  auto pres = preset("bs12");
  const auto labels = homology_basis_labels(*pres, 3);
  const auto t = index_p_normal_subgroups(whole_group(pres), 3).front();
  const auto k = covering_complex(t);
  const auto sub = labelled_subgraph_pullback(t, labels);
  CHECK(sub.count0() == 3);
  CHECK(sub.count1() == 3);
  CHECK(sub.count2() == 0);
  CHECK(graph_component_count(k, sub) == 1);
  CHECK(h1_image_rank(k, {&sub}, 3) == dp(k, 3));
}

TEST_CASE("local structure report") {
  const auto torus = presentation_complex(*preset("torus"));
  const auto rep = local_structure(torus);
  CHECK(rep.valence_one.empty());
  CHECK(rep.valence_zero.empty());
  CHECK(rep.locally_separating_vertices.empty());
  const auto f2 = presentation_complex(*preset("f2"));
  CHECK(local_structure(f2).valence_zero.size() == 2);
  // A disc: one edge loop with a single 2-cell has a free face.
  const TwoComplex disc(1, {{0, 0}}, {{{0, 1}}});
  CHECK(local_structure(disc).valence_one == std::vector<std::uint32_t>{0});
}
