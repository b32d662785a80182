#include "homgrowth/complexes.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "homgrowth/errors.hpp"

namespace homgrowth {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> parent;
};

}  // namespace

TwoComplex::TwoComplex(std::size_t zero_cells, std::vector<OneCell> one_cells,
                       std::vector<std::vector<SignedCell>> two_cells)
    : zero_cells_(zero_cells), one_cells_(std::move(one_cells)), two_cells_(std::move(two_cells)) {
  for (const auto& e : one_cells_)
    if (e.tail >= zero_cells_ || e.head >= zero_cells_) throw InputError("complexes", "1-cell endpoint out of range");
  for (std::size_t f = 0; f < two_cells_.size(); ++f) {
    const auto& w = two_cells_[f];
    if (w.empty()) throw InputError("complexes", "2-cell " + std::to_string(f) + " has an empty boundary");
    for (const auto& x : w)
      if (x.cell >= one_cells_.size() || (x.sign != 1 && x.sign != -1))
        throw InputError("complexes", "2-cell boundary letter out of range");
    for (std::size_t i = 0; i < w.size(); ++i)
      if (end(w[i]) != start(w[(i + 1) % w.size()]))
        throw InputError("complexes", "boundary of 2-cell " + std::to_string(f) + " is not a closed edge path");
  }
}

std::int64_t TwoComplex::euler_characteristic() const {
  return static_cast<std::int64_t>(zero_cells_) - static_cast<std::int64_t>(one_cells_.size()) +
         static_cast<std::int64_t>(two_cells_.size());
}

std::vector<std::size_t> TwoComplex::valences() const {
  std::vector<std::size_t> v(one_cells_.size(), 0);
  for (const auto& w : two_cells_)
    for (const auto& x : w) ++v[x.cell];
  return v;
}

std::size_t TwoComplex::max_valence() const {
  const auto v = valences();
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

std::vector<std::uint32_t> TwoComplex::components(std::size_t* count) const {
  DisjointSets ds(zero_cells_);
  for (const auto& e : one_cells_) ds.unite(e.tail, e.head);
  std::vector<std::uint32_t> label(zero_cells_, kNone), out(zero_cells_);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < zero_cells_; ++v) {
    const auto r = ds.find(v);
    if (label[r] == kNone) label[r] = next++;
    out[v] = label[r];
  }
  if (count) *count = next;
  return out;
}

std::size_t TwoComplex::component_count() const {
  std::size_t n = 0;
  components(&n);
  return n;
}

SubComplex SubComplex::empty(const TwoComplex& k) {
  return {std::vector<bool>(k.zero_cell_count(), false), std::vector<bool>(k.one_cell_count(), false),
          std::vector<bool>(k.two_cell_count(), false)};
}

SubComplex SubComplex::full(const TwoComplex& k) {
  return {std::vector<bool>(k.zero_cell_count(), true), std::vector<bool>(k.one_cell_count(), true),
          std::vector<bool>(k.two_cell_count(), true)};
}

bool SubComplex::is_closed(const TwoComplex& k) const {
  for (std::size_t e = 0; e < one.size(); ++e)
    if (one[e] && (!zero[k.one_cells()[e].tail] || !zero[k.one_cells()[e].head])) return false;
  for (std::size_t f = 0; f < two.size(); ++f)
    if (two[f])
      for (const auto& x : k.two_cells()[f])
        if (!one[x.cell]) return false;
  return true;
}

std::size_t SubComplex::count0() const { return static_cast<std::size_t>(std::count(zero.begin(), zero.end(), true)); }
std::size_t SubComplex::count1() const { return static_cast<std::size_t>(std::count(one.begin(), one.end(), true)); }
std::size_t SubComplex::count2() const { return static_cast<std::size_t>(std::count(two.begin(), two.end(), true)); }

namespace {

std::vector<bool> combine(const std::vector<bool>& a, const std::vector<bool>& b, bool both) {
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = both ? (a[i] && b[i]) : (a[i] || b[i]);
  return out;
}

}  // namespace

SubComplex subcomplex_union(const SubComplex& a, const SubComplex& b) {
  return {combine(a.zero, b.zero, false), combine(a.one, b.one, false), combine(a.two, b.two, false)};
}

SubComplex subcomplex_intersection(const SubComplex& a, const SubComplex& b) {
  return {combine(a.zero, b.zero, true), combine(a.one, b.one, true), combine(a.two, b.two, true)};
}

InducedComplex induced_complex(const TwoComplex& k, const SubComplex& sub) {
  if (!sub.is_closed(k)) throw InputError("complexes", "subcomplex is not closed");
  InducedComplex out;
  out.zero_from_parent.assign(k.zero_cell_count(), kNone);
  out.one_from_parent.assign(k.one_cell_count(), kNone);
  for (std::uint32_t v = 0; v < k.zero_cell_count(); ++v)
    if (sub.zero[v]) {
      out.zero_from_parent[v] = static_cast<std::uint32_t>(out.zero_to_parent.size());
      out.zero_to_parent.push_back(v);
    }
  std::vector<OneCell> ones;
  for (std::uint32_t e = 0; e < k.one_cell_count(); ++e)
    if (sub.one[e]) {
      out.one_from_parent[e] = static_cast<std::uint32_t>(ones.size());
      out.one_to_parent.push_back(e);
      ones.push_back({out.zero_from_parent[k.one_cells()[e].tail], out.zero_from_parent[k.one_cells()[e].head]});
    }
  std::vector<std::vector<SignedCell>> twos;
  for (std::uint32_t f = 0; f < k.two_cell_count(); ++f)
    if (sub.two[f]) {
      std::vector<SignedCell> w;
      for (const auto& x : k.two_cells()[f]) w.push_back({out.one_from_parent[x.cell], x.sign});
      out.two_to_parent.push_back(f);
      twos.push_back(std::move(w));
    }
  out.complex = TwoComplex(out.zero_to_parent.size(), std::move(ones), std::move(twos));
  return out;
}

TwoComplex presentation_complex(const Presentation& pres) {
  std::vector<OneCell> ones(pres.generator_count(), OneCell{0, 0});
  std::vector<std::vector<SignedCell>> twos;
  for (const auto& r : pres.relators()) {
    std::vector<SignedCell> w;
    for (const auto& x : r) w.push_back({x.gen, x.sign});
    twos.push_back(std::move(w));
  }
  return TwoComplex(1, std::move(ones), std::move(twos));
}

TwoComplex covering_complex(const CosetTable& t) {
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  std::vector<OneCell> ones;
  ones.reserve(t.index() * n);
  for (std::uint32_t c = 0; c < t.index(); ++c)
    for (std::uint32_t s = 0; s < n; ++s) ones.push_back({c, t.perm(s)[c]});
  std::vector<std::vector<SignedCell>> twos;
  for (std::uint32_t c = 0; c < t.index(); ++c)
    for (const auto& r : t.presentation().relators()) {
      std::vector<SignedCell> w;
      std::uint32_t at = c;
      for (const auto& x : r) {
        const std::uint32_t from = x.sign > 0 ? at : t.act(at, x);
        w.push_back({from * n + x.gen, x.sign});
        at = t.act(at, x);
      }
      twos.push_back(std::move(w));
    }
  return TwoComplex(t.index(), std::move(ones), std::move(twos));
}

TwoComplex covering_complex(const TwoComplex& base, const CosetTable& t) {
  if (!(base == presentation_complex(t.presentation())))
    throw InputError("complexes", "base complex is not the presentation complex of the coset table");
  return covering_complex(t);
}

MatrixFp boundary1(const TwoComplex& k, Residue p) {
  MatrixFp m(p, k.zero_cell_count(), k.one_cell_count());
  for (std::size_t e = 0; e < k.one_cell_count(); ++e) {
    m.add(k.one_cells()[e].head, e, 1);
    m.add(k.one_cells()[e].tail, e, -1);
  }
  return m;
}

MatrixFp boundary2(const TwoComplex& k, Residue p) {
  MatrixFp m(p, k.one_cell_count(), k.two_cell_count());
  for (std::size_t f = 0; f < k.two_cell_count(); ++f)
    for (const auto& x : k.two_cells()[f]) m.add(x.cell, f, x.sign);
  return m;
}

MatrixFp coboundary0(const TwoComplex& k, Residue p) { return boundary1(k, p).transpose(); }
MatrixFp coboundary1(const TwoComplex& k, Residue p) { return boundary2(k, p).transpose(); }

HomologyProfile homology_profile(const TwoComplex& k, Residue p) {
  require_prime(p, "complexes");
  HomologyProfile h;
  h.p = p;
  h.rank_boundary1 = rank(boundary1(k, p));
  h.rank_boundary2 = rank(boundary2(k, p));
  h.d0 = k.zero_cell_count() - h.rank_boundary1;
  h.d1 = k.one_cell_count() - h.rank_boundary1 - h.rank_boundary2;
  return h;
}

std::size_t dp(const TwoComplex& k, Residue p) { return homology_profile(k, p).d1; }

std::size_t dp(const TwoComplex& k, const SubComplex& sub, Residue p) {
  return homology_profile(induced_complex(k, sub).complex, p).d1;
}

std::vector<VectorFp> cycle_basis(const TwoComplex& k, Residue p) { return kernel_basis(boundary1(k, p)); }

std::size_t h1_image_rank(const TwoComplex& k, const std::vector<const SubComplex*>& subs, Residue p) {
  SpanBuilder span(p, k.one_cell_count());
  const MatrixFp b2 = boundary2(k, p);
  const MatrixFp b2t = b2.transpose();
  for (std::size_t f = 0; f < b2t.rows(); ++f) span.add(b2t.row(f));
  const std::size_t boundaries = span.dimension();
  for (const SubComplex* sub : subs) {
    const auto induced = induced_complex(k, *sub);
    for (const auto& z : cycle_basis(induced.complex, p)) {
      VectorFp lifted(k.one_cell_count(), 0);
      for (std::size_t e = 0; e < z.size(); ++e) lifted[induced.one_to_parent[e]] = z[e];
      span.add(lifted);
    }
  }
  return span.dimension() - boundaries;
}

CutDecomposition cut_decomposition(const TwoComplex& k, const std::vector<bool>& d_set) {
  if (d_set.size() != k.zero_cell_count()) throw InputError("complexes", "cut set has wrong length");
  const auto in_d = static_cast<std::size_t>(std::count(d_set.begin(), d_set.end(), true));
  if (in_d == 0 || in_d == d_set.size()) throw InputError("complexes", "cut set must be non-empty and proper");

  auto closure_meeting = [&](bool side) {
    SubComplex s = SubComplex::empty(k);
    auto keep_edge = [&](std::uint32_t e) {
      s.one[e] = true;
      s.zero[k.one_cells()[e].tail] = true;
      s.zero[k.one_cells()[e].head] = true;
    };
    for (std::uint32_t v = 0; v < k.zero_cell_count(); ++v)
      if (d_set[v] == side) s.zero[v] = true;
    for (std::uint32_t e = 0; e < k.one_cell_count(); ++e) {
      const auto& c = k.one_cells()[e];
      if (d_set[c.tail] == side || d_set[c.head] == side) keep_edge(e);
    }
    for (std::uint32_t f = 0; f < k.two_cell_count(); ++f) {
      const auto& w = k.two_cells()[f];
      const bool meets = std::any_of(w.begin(), w.end(), [&](const SignedCell& x) { return d_set[k.start(x)] == side; });
      if (!meets) continue;
      s.two[f] = true;
      for (const auto& x : w) keep_edge(x.cell);
    }
    return s;
  };

  CutDecomposition cut;
  cut.a = closure_meeting(true);
  cut.b = closure_meeting(false);
  cut.c = subcomplex_intersection(cut.a, cut.b);
  return cut;
}

SubComplex labelled_subgraph_pullback(const CosetTable& t, const std::vector<std::uint32_t>& labels) {
  const auto n = t.generator_count();
  std::vector<bool> use(n, false);
  for (auto s : labels) {
    if (s >= n) throw InputError("complexes", "label outside the generating set");
    use[s] = true;
  }
  SubComplex sub;
  sub.zero.assign(t.index(), true);
  sub.one.assign(t.index() * n, false);
  sub.two.assign(t.index() * t.presentation().relators().size(), false);
  for (std::size_t c = 0; c < t.index(); ++c)
    for (std::size_t s = 0; s < n; ++s) sub.one[c * n + s] = use[s];
  return sub;
}

std::size_t graph_component_count(const TwoComplex& k, const SubComplex& sub) {
  DisjointSets ds(k.zero_cell_count());
  for (std::uint32_t e = 0; e < k.one_cell_count(); ++e)
    if (sub.one[e]) ds.unite(k.one_cells()[e].tail, k.one_cells()[e].head);
  std::size_t count = 0;
  for (std::uint32_t v = 0; v < k.zero_cell_count(); ++v)
    if (sub.zero[v] && ds.find(v) == v) ++count;
  return count;
}

LocalStructureReport local_structure(const TwoComplex& k) {
  LocalStructureReport report;
  const auto val = k.valences();
  for (std::uint32_t e = 0; e < val.size(); ++e) {
    if (val[e] == 0) report.valence_zero.push_back(e);
    if (val[e] == 1) report.valence_one.push_back(e);
  }
  // Link points are 1-cell ends: 2e is the tail end of e, 2e+1 the head end.
  DisjointSets ds(2 * k.one_cell_count());
  for (const auto& w : k.two_cells())
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto& in = w[i];
      const auto& out = w[(i + 1) % w.size()];
      const std::uint32_t arrive = 2 * in.cell + (in.sign > 0 ? 1 : 0);
      const std::uint32_t leave = 2 * out.cell + (out.sign > 0 ? 0 : 1);
      ds.unite(arrive, leave);
    }
  std::vector<std::vector<std::uint32_t>> ends(k.zero_cell_count());
  for (std::uint32_t e = 0; e < k.one_cell_count(); ++e) {
    ends[k.one_cells()[e].tail].push_back(2 * e);
    ends[k.one_cells()[e].head].push_back(2 * e + 1);
  }
  for (std::uint32_t v = 0; v < k.zero_cell_count(); ++v) {
    if (ends[v].size() < 2) continue;
    const auto root = ds.find(ends[v].front());
    if (std::any_of(ends[v].begin(), ends[v].end(), [&](std::uint32_t x) { return ds.find(x) != root; }))
      report.locally_separating_vertices.push_back(v);
  }
  return report;
}

}  // namespace homgrowth
