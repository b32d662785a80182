#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "homgrowth/errors.hpp"
#include "homgrowth/largeness.hpp"
#include "oracles.hpp"

using namespace homgrowth;

namespace {

std::shared_ptr<const Presentation> preset(const std::string& name) {
  return std::make_shared<const Presentation>(load_presentation(std::string(PRESENTATIONS_DIR) + "/" + name + ".txt"));
}

// Free product of copies of Z/p as (factor, exponent) pairs, reduced by a
// separate stack merge.
using FP = std::vector<std::pair<std::uint32_t, std::int64_t>>;

FP fp_push(FP w, std::uint32_t factor, std::int64_t e, std::int64_t p) {
  e = oracle::mod(e, p);
  if (e == 0) return w;
  if (!w.empty() && w.back().first == factor) {
    const auto s = oracle::mod(w.back().second + e, p);
    w.pop_back();
    if (s != 0) w.push_back({factor, s});
  } else {
    w.push_back({factor, e});
  }
  return w;
}

FP fp_inverse(const FP& w, std::int64_t p) {
  FP out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = fp_push(out, it->first, -it->second, p);
  return out;
}

FP fp_concat(FP a, const FP& b, std::int64_t p) {
  for (const auto& [f, e] : b) a = fp_push(a, f, e, p);
  return a;
}

FP from_cert(const FreeProductWord& w) {
  FP out;
  for (const auto& l : w) out.push_back({l.factor, l.exponent});
  return out;
}

// Crossing word of a closed path, read directly off the cocycle data.
FP crossings(const LargenessCertificate& cert, const std::vector<SignedCell>& path) {
  FP out;
  for (const auto& step : path)
    for (std::uint32_t i = 0; i < cert.cocycles.size(); ++i)
      for (const auto& ev : cert.cocycles[i].edge_vertices)
        if (ev.cell == step.cell) out = fp_push(out, i, step.sign * static_cast<std::int64_t>(ev.weight), cert.p);
  return out;
}

// Every rewritten relator of the cover maps to the identity.
void check_homomorphism(const LargenessCertificate& cert) {
  const auto images = epimorphism_images(cert);
  Presentation target = cert.images_for_schreier_generators ? reidemeister_schreier(cert.cover) : cert.cover.presentation();
  REQUIRE(images.size() == target.generator_count());
  for (const auto& r : target.relators()) {
    FP value;
    for (const auto& l : r) {
      const auto img = from_cert(images[l.gen]);
      value = fp_concat(value, l.sign > 0 ? img : fp_inverse(img, cert.p), cert.p);
    }
    CHECK(value.empty());
  }
}

void check_certificate(const LargenessCertificate& cert) {
  CHECK_NOTHROW(verify_certificate(cert));
  const auto k = covering_complex(cert.cover);
  REQUIRE(cert.witness_loops.size() == cert.cocycles.size());
  for (std::uint32_t i = 0; i < cert.witness_loops.size(); ++i) {
    const auto& loop = cert.witness_loops[i];
    REQUIRE_FALSE(loop.empty());
    CHECK(k.start(loop.front()) == 0);
    CHECK(k.end(loop.back()) == 0);
    for (std::size_t j = 0; j + 1 < loop.size(); ++j) CHECK(k.end(loop[j]) == k.start(loop[j + 1]));
    const auto w = crossings(cert, loop);
    REQUIRE(w.size() == 1);
    CHECK(w[0].first == i);
  }
  check_homomorphism(cert);
}

std::optional<LargenessCertificate> search(const std::vector<CosetTable>& covers, Residue p) {
  SweepOptions options;
  options.diagnostics = false;
  for (const auto& t : covers) {
    auto r = sweep_cover(t, p, options);
    if (r.certificate) return r.certificate;
  }
  return std::nullopt;
}

std::vector<CosetTable> two_level_covers(std::shared_ptr<const Presentation> pres, Residue p) {
  std::vector<CosetTable> out{whole_group(pres)};
  for (const auto& k : index_p_normal_subgroups(out[0], p)) {
    out.push_back(k);
    for (auto& kk : index_p_normal_subgroups(k, p)) out.push_back(kk);
    if (out.size() > 20) break;
  }
  return out;
}

}  // namespace

TEST_CASE("free product words") {
  const FreeProductWord w{{0, 1}, {0, 2}, {1, 1}, {1, 1}, {1, 1}, {0, 1}};
  CHECK(reduce_free_product(w, 3) == FreeProductWord{{0, 1}});
  CHECK(reduce_free_product({{1, 2}, {1, 1}}, 3).empty());
  CHECK(free_product_to_string({}) == "1");
  CHECK(free_product_to_string({{0, 2}, {1, 1}}) == "x1^2 x2");
  const auto r = reduce_free_product({{0, 1}, {1, 1}, {1, 1}}, 3);
  CHECK(r == FreeProductWord{{0, 1}, {1, 2}});
}

TEST_CASE("F2 is certified at p = 3 on an index-3 cover") {
  auto f2 = preset("f2");
  const auto cert = search(two_level_covers(f2, 3), 3);
  REQUIRE(cert);
  CHECK(cert->cover.index() <= 3);
  check_certificate(*cert);
}

TEST_CASE("F2 and genus 2 are certified at p = 2") {
  for (const auto* name : {"f2", "genus2"}) {
    const auto cert = search(two_level_covers(preset(name), 2), 2);
    CAPTURE(name);
    REQUIRE(cert);
    CHECK(cert->cover.index() <= 8);
    check_certificate(*cert);
  }
}

TEST_CASE("tampered certificates are rejected") {
  const auto found = search(two_level_covers(preset("f2"), 3), 3);
  REQUIRE(found);
  const auto& cert = *found;

  auto zero_weight = cert;
  zero_weight.cocycles[0].edge_vertices[0].weight = 0;
  CHECK_THROWS_AS(verify_certificate(zero_weight), VerificationFailure);

  auto one_cocycle = cert;
  one_cocycle.cocycles.pop_back();
  one_cocycle.witness_loops.pop_back();
  CHECK_THROWS_AS(verify_certificate(one_cocycle), VerificationFailure);

  auto wrong_image = cert;
  wrong_image.generator_images[0].push_back({0, 1});
  CHECK_THROWS_AS(verify_certificate(wrong_image), VerificationFailure);

  auto broken_loop = cert;
  broken_loop.witness_loops[0].pop_back();
  CHECK_THROWS_AS(verify_certificate(broken_loop), VerificationFailure);

  auto swapped_loops = cert;
  std::swap(swapped_loops.witness_loops[0], swapped_loops.witness_loops[1]);
  CHECK_THROWS_AS(verify_certificate(swapped_loops), VerificationFailure);

  auto bad_prime = cert;
  bad_prime.p = 4;
  CHECK_THROWS_AS(verify_certificate(bad_prime), VerificationFailure);

  auto empty_cut = cert;
  empty_cut.d_set.clear();
  CHECK_THROWS_AS(verify_certificate(empty_cut), VerificationFailure);
}

TEST_CASE("the torus is never certified on small covers") {
  auto torus = preset("torus");
  for (Residue p : {2u, 3u}) {
    std::vector<CosetTable> covers{whole_group(torus)};
    for (const auto& k : index_p_normal_subgroups(covers[0], p)) {
      covers.push_back(k);
      if (p == 2)
        for (auto& kk : index_p_normal_subgroups(k, p)) covers.push_back(kk);
    }
    for (const auto& t : covers) {
      SweepOptions options;
      options.stop_at_first = false;
      const auto r = sweep_cover(t, p, options);
      CHECK(r.successes == 0);
      CHECK_FALSE(r.certificate);
      CHECK(r.bound_violations == 0);
      if (r.cuts_tried) CHECK(r.min_kernel_dim == 0);
    }
  }
}

TEST_CASE("restriction kernel dimensions agree with the dual homology rank") {
  std::mt19937_64 rng(61);
  for (const auto* name : {"genus2", "torus", "f2"}) {
    const auto t = index_p_normal_subgroups(whole_group(preset(name)), 2).front();
    const auto kk = index_p_normal_subgroups(t, 2).front();
    const auto k = covering_complex(kk);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<bool> d(k.zero_cell_count(), false);
      d[0] = true;
      for (std::size_t v = 1; v < d.size(); ++v) d[v] = rng() % 2;
      if (std::all_of(d.begin(), d.end(), [](bool b) { return b; })) d.back() = false;
      const auto cut = cut_decomposition(k, d);
      const auto rk = restriction_kernels(k, cut, 2);
      const SubComplex* sides[2] = {&cut.a, &cut.b};
      for (int s = 0; s < 2; ++s) {
        const auto ind = induced_complex(k, *sides[s]);
        auto c_local = SubComplex::empty(ind.complex);
        for (std::uint32_t v = 0; v < ind.zero_to_parent.size(); ++v) c_local.zero[v] = cut.c.zero[ind.zero_to_parent[v]];
        for (std::uint32_t e = 0; e < ind.one_to_parent.size(); ++e) c_local.one[e] = cut.c.one[ind.one_to_parent[e]];
        for (std::uint32_t f = 0; f < ind.two_to_parent.size(); ++f) c_local.two[f] = cut.c.two[ind.two_to_parent[f]];
        const auto expected = dp(ind.complex, 2) - h1_image_rank(ind.complex, {&c_local}, 2);
        CHECK(rk.dims[s] == expected);
        CHECK(rk.cocycles[s].size() == expected);
      }
      const auto da = static_cast<std::int64_t>(dp(k, cut.a, 2));
      const auto db = static_cast<std::int64_t>(dp(k, cut.b, 2));
      const auto dc = static_cast<std::int64_t>(dp(k, cut.c, 2));
      const auto e = dc - std::min(da, db);
      const Rational expect = e >= 0 ? Rational(std::int64_t{1} << e) : Rational(1, std::int64_t{1} << -e);
      CHECK(hp_upper_bound(k, d, 2) == expect);
    }
  }
}

TEST_CASE("cut diagnostics") {
  auto g2 = preset("genus2");
  const auto labels = homology_basis_labels(*g2, 2);
  const auto t = index_p_normal_subgroups(whole_group(g2), 2).front();
  const auto kk = index_p_normal_subgroups(t, 2)[3];
  std::vector<bool> d(kk.index(), false);
  d[0] = true;
  const auto diag = cut_diagnostics(kk, d, 2, labels);
  CHECK(diag.all_ok());
  CHECK(diag.d_set == std::vector<std::uint32_t>{0});
  CHECK(diag.bound_i == labels.size());
  CHECK_THROWS_AS(cut_diagnostics(kk, d, 2, {0}), InputError);
  CHECK(epsilon_threshold() == doctest::Approx(0.0540925534));
}

TEST_CASE("candidate cuts") {
  const auto t = index_p_normal_subgroups(index_p_normal_subgroups(whole_group(preset("f2")), 2)[0], 2)[0];
  SweepOptions options;
  const auto all = candidate_cuts(t, options);
  CHECK(all.size() == 7);  // every proper cut containing vertex 0 of 4 vertices
  for (const auto& d : all) CHECK(d[0]);
  options.exhaustive_limit = 1;
  const auto some = candidate_cuts(t, options);
  CHECK_FALSE(some.empty());
  CHECK(some.size() <= all.size());
}
