#include "homgrowth/cocycles.hpp"

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

Residue signed_value(Residue v, std::int8_t sign, Residue p) { return sign > 0 ? v : (p - v) % p; }

void require_matching(const TwoComplex& k, const Cochain1& c) {
  require_prime(c.p, "cocycles");
  if (c.values.size() != k.one_cell_count()) throw InputError("cocycles", "cochain length differs from 1-cell count");
}

}  // namespace

std::vector<std::uint32_t> Cochain1::support() const {
  std::vector<std::uint32_t> s;
  for (std::uint32_t e = 0; e < values.size(); ++e)
    if (values[e] != 0) s.push_back(e);
  return s;
}

bool Cochain1::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](Residue v) { return v == 0; });
}

bool is_cocycle(const TwoComplex& k, const Cochain1& c) {
  require_matching(k, c);
  for (const auto& w : k.two_cells()) {
    std::uint64_t sum = 0;
    for (const auto& x : w) sum += signed_value(c.values[x.cell], x.sign, c.p);
    if (sum % c.p != 0) return false;
  }
  return true;
}

std::vector<VectorFp> cohomology_basis(const TwoComplex& k, Residue p) {
  require_prime(p, "cocycles");
  const MatrixFp d1 = boundary1(k, p);
  SpanBuilder span(p, k.one_cell_count());
  for (std::size_t v = 0; v < d1.rows(); ++v) span.add(d1.row(v));
  std::vector<VectorFp> basis;
  for (auto& z : kernel_basis(coboundary1(k, p)))
    if (span.add(z)) basis.push_back(std::move(z));
  return basis;
}

Cochain1 cocycle_from_class(const TwoComplex& k, const VectorFp& class_coeffs, Residue p) {
  const auto basis = cohomology_basis(k, p);
  if (class_coeffs.size() != basis.size())
    throw InputError("cocycles", "class coefficients do not match the cohomology basis dimension");
  Cochain1 c{p, VectorFp(k.one_cell_count(), 0)};
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (class_coeffs[i] % p != 0) c.values = add_scaled(c.values, basis[i], class_coeffs[i] % p, p);
  return c;
}

bool is_coboundary(const TwoComplex& k, const Cochain1& c) {
  require_matching(k, c);
  return solve_in_span(boundary1(k, c.p), c.values).has_value();
}

VectorFp coboundary_of(const TwoComplex& k, const VectorFp& x, Residue p) {
  if (x.size() != k.zero_cell_count()) throw InputError("cocycles", "0-cochain length differs from 0-cell count");
  VectorFp out(k.one_cell_count(), 0);
  for (std::size_t e = 0; e < k.one_cell_count(); ++e) {
    const auto& c = k.one_cells()[e];
    out[e] = static_cast<Residue>((x[c.head] + p - x[c.tail]) % p);
  }
  return out;
}

Cochain1 RegularModPCocycle::evaluation(const TwoComplex& k) const {
  Cochain1 c{p, VectorFp(k.one_cell_count(), 0)};
  for (const auto& ev : edge_vertices) c.values[ev.cell] = ev.weight;
  return c;
}

RegularModPCocycle regularize(const TwoComplex& k, const Cochain1& c) {
  require_matching(k, c);
  if (!is_cocycle(k, c)) throw InputError("cocycles", "regularize needs a cocycle");
  if (c.is_zero()) throw InputError("cocycles", "a regular cocycle needs non-empty support");
  RegularModPCocycle g;
  g.p = c.p;
  for (auto e : c.support()) g.edge_vertices.push_back({e, c.values[e]});
  for (std::uint32_t f = 0; f < k.two_cell_count(); ++f) {
    const auto& w = k.two_cells()[f];
    bool star = false;
    for (std::uint32_t i = 0; i < w.size(); ++i)
      if (c.values[w[i].cell] != 0) {
        g.arcs.push_back({f, i});
        star = true;
      }
    if (star) g.star_cells.push_back(f);
  }
  return g;
}

std::string check_regular(const TwoComplex& k, const RegularModPCocycle& g) {
  if (g.edge_vertices.empty()) return "empty graph";
  std::vector<Residue> weight(k.one_cell_count(), 0);
  for (std::size_t i = 0; i < g.edge_vertices.size(); ++i) {
    const auto& ev = g.edge_vertices[i];
    if (ev.cell >= k.one_cell_count()) return "edge vertex on a missing 1-cell";
    if (ev.weight == 0 || ev.weight >= g.p) return "edge vertex weight outside F_p minus zero";
    if (i > 0 && g.edge_vertices[i - 1].cell >= ev.cell) return "edge vertices not sorted and distinct";
    weight[ev.cell] = ev.weight;
  }
  std::vector<Arc> expected_arcs;
  std::vector<std::uint32_t> expected_stars;
  for (std::uint32_t f = 0; f < k.two_cell_count(); ++f) {
    const auto& w = k.two_cells()[f];
    std::uint64_t sum = 0;
    bool star = false;
    for (std::uint32_t i = 0; i < w.size(); ++i)
      if (weight[w[i].cell] != 0) {
        expected_arcs.push_back({f, i});
        sum += signed_value(weight[w[i].cell], w[i].sign, g.p);
        star = true;
      }
    if (star) expected_stars.push_back(f);
    if (sum % g.p != 0) return "weight sum at the interior vertex of 2-cell " + std::to_string(f) + " is nonzero";
  }
  if (expected_stars != g.star_cells) return "star cells differ from the 2-cells meeting the support";
  if (expected_arcs != g.arcs) return "arcs differ from one arc per supported boundary occurrence";
  return {};
}

RegularModPCocycle disjoint_union(const std::vector<RegularModPCocycle>& parts) {
  if (parts.empty()) throw InputError("cocycles", "disjoint_union of nothing");
  RegularModPCocycle u;
  u.p = parts.front().p;
  for (const auto& g : parts) {
    if (g.p != u.p) throw InputError("cocycles", "cocycles over different primes");
    u.edge_vertices.insert(u.edge_vertices.end(), g.edge_vertices.begin(), g.edge_vertices.end());
    u.star_cells.insert(u.star_cells.end(), g.star_cells.begin(), g.star_cells.end());
    u.arcs.insert(u.arcs.end(), g.arcs.begin(), g.arcs.end());
  }
  std::sort(u.edge_vertices.begin(), u.edge_vertices.end(),
            [](const EdgeVertex& a, const EdgeVertex& b) { return a.cell < b.cell; });
  std::sort(u.star_cells.begin(), u.star_cells.end());
  std::sort(u.arcs.begin(), u.arcs.end(), [](const Arc& a, const Arc& b) {
    return std::pair(a.two_cell, a.position) < std::pair(b.two_cell, b.position);
  });
  for (std::size_t i = 1; i < u.edge_vertices.size(); ++i)
    if (u.edge_vertices[i - 1].cell == u.edge_vertices[i].cell)
      throw InputError("cocycles", "cocycle supports overlap on 1-cell " + std::to_string(u.edge_vertices[i].cell));
  for (std::size_t i = 1; i < u.star_cells.size(); ++i)
    if (u.star_cells[i - 1] == u.star_cells[i])
      throw InputError("cocycles", "cocycles share star 2-cell " + std::to_string(u.star_cells[i]));
  return u;
}

ComplementDecomposition complement_components(const TwoComplex& k, const RegularModPCocycle& g) {
  const std::size_t nv = k.zero_cell_count();
  const std::size_t ne = k.one_cell_count();
  std::vector<bool> supported(ne, false);
  for (const auto& ev : g.edge_vertices) supported[ev.cell] = true;
  std::vector<std::vector<std::uint32_t>> arc_positions(k.two_cell_count());
  for (const auto& a : g.arcs) arc_positions[a.two_cell].push_back(a.position);

  // Piece numbering: 0-cells, then two halves per 1-cell, then 2-cell regions.
  auto half = [&](std::uint32_t e, int side) { return static_cast<std::uint32_t>(nv + 2 * e + side); };
  std::vector<std::uint32_t> region_offset(k.two_cell_count() + 1);
  std::uint32_t next = static_cast<std::uint32_t>(nv + 2 * ne);
  for (std::size_t f = 0; f < k.two_cell_count(); ++f) {
    region_offset[f] = next;
    next += static_cast<std::uint32_t>(std::max<std::size_t>(1, arc_positions[f].size()));
  }
  region_offset[k.two_cell_count()] = next;
  DisjointSets ds(next);

  for (std::uint32_t e = 0; e < ne; ++e) {
    ds.unite(half(e, 0), k.one_cells()[e].tail);
    ds.unite(half(e, 1), k.one_cells()[e].head);
    if (!supported[e]) ds.unite(half(e, 0), half(e, 1));
  }
  auto start_half = [&](const SignedCell& x) { return half(x.cell, x.sign > 0 ? 0 : 1); };
  auto end_half = [&](const SignedCell& x) { return half(x.cell, x.sign > 0 ? 1 : 0); };
  for (std::uint32_t f = 0; f < k.two_cell_count(); ++f) {
    const auto& w = k.two_cells()[f];
    const auto& q = arc_positions[f];
    if (q.empty()) {
      for (const auto& x : w) ds.unite(region_offset[f], half(x.cell, 0));
      continue;
    }
    const std::size_t m = q.size();
    for (std::size_t j = 0; j < m; ++j) {
      const auto sector = static_cast<std::uint32_t>(region_offset[f] + j);
      const std::size_t from = q[j];
      const std::size_t to = q[(j + 1) % m];
      ds.unite(sector, end_half(w[from]));
      for (std::size_t i = (from + 1) % w.size(); i != to; i = (i + 1) % w.size()) ds.unite(sector, half(w[i].cell, 0));
      ds.unite(sector, start_half(w[to]));
    }
  }

  ComplementDecomposition out;
  std::vector<std::uint32_t> label(next, kNone);
  auto id = [&](std::uint32_t piece) {
    const auto r = ds.find(piece);
    if (label[r] == kNone) label[r] = static_cast<std::uint32_t>(out.component_count++);
    return label[r];
  };
  for (std::uint32_t v = 0; v < nv; ++v) out.zero_cell.push_back(id(v));
  for (std::uint32_t e = 0; e < ne; ++e) out.one_cell_half.push_back({id(half(e, 0)), id(half(e, 1))});
  for (std::uint32_t f = 0; f < k.two_cell_count(); ++f) {
    std::vector<std::uint32_t> regions;
    for (auto piece = region_offset[f]; piece < region_offset[f + 1]; ++piece) regions.push_back(id(piece));
    out.two_cell_region.push_back(std::move(regions));
  }
  return out;
}

NonseparatingResult make_nonseparating(const TwoComplex& k, const Cochain1& c) {
  require_matching(k, c);
  if (!is_cocycle(k, c)) throw InputError("cocycles", "make_nonseparating needs a cocycle");
  const std::size_t target = k.component_count();
  NonseparatingResult result;
  Cochain1 cur = c;
  while (true) {
    if (cur.is_zero()) {
      result.edge_vertex_history.push_back(0);
      result.representative = cur;
      return result;
    }
    RegularModPCocycle g = regularize(k, cur);
    result.edge_vertex_history.push_back(g.edge_vertex_count());
    const auto comp = complement_components(k, g);
    if (comp.component_count == target) {
      result.cocycle = std::move(g);
      result.representative = cur;
      return result;
    }
    // K₁: lowest-numbered component on either side of a separating edge vertex.
    std::uint32_t k1 = kNone;
    for (const auto& ev : g.edge_vertices) {
      const auto& h = comp.one_cell_half[ev.cell];
      if (h[0] != h[1]) k1 = std::min({k1, h[0], h[1]});
    }
    if (k1 == kNone) throw VerificationFailure("cocycles", "separating cocycle without a separating edge vertex");
    std::uint32_t chosen = kNone;
    for (const auto& ev : g.edge_vertices) {
      const auto& h = comp.one_cell_half[ev.cell];
      if (h[0] != h[1] && (h[0] == k1 || h[1] == k1)) {
        chosen = ev.cell;
        break;
      }
    }
    VectorFp chi(k.zero_cell_count(), 0);
    for (std::uint32_t v = 0; v < k.zero_cell_count(); ++v) chi[v] = comp.zero_cell[v] == k1 ? 1 : 0;
    const VectorFp delta = coboundary_of(k, chi, c.p);
    // δχ(chosen) = ±1, so this scale zeroes the chosen edge vertex.
    const Residue scale = static_cast<Residue>(std::uint64_t{cur.values[chosen]} * delta[chosen] % c.p);
    cur.values = add_scaled(cur.values, delta, (c.p - scale) % c.p, c.p);
  }
}

NonseparatingResult relative_nonseparating(const TwoComplex& k, const SubComplex& avoid, const Cochain1& c) {
  require_matching(k, c);
  if (!is_cocycle(k, c)) throw InputError("cocycles", "relative_nonseparating needs a cocycle");
  const auto induced = induced_complex(k, avoid);
  VectorFp restricted(induced.one_to_parent.size());
  for (std::size_t e = 0; e < restricted.size(); ++e) restricted[e] = c.values[induced.one_to_parent[e]];
  const auto x = solve_in_span(boundary1(induced.complex, c.p), restricted);
  if (!x) throw InputError("cocycles", "class does not restrict to zero on the avoided subcomplex");
  VectorFp lifted(k.zero_cell_count(), 0);
  for (std::size_t v = 0; v < x->size(); ++v) lifted[induced.zero_to_parent[v]] = (*x)[v];
  Cochain1 shifted = c;
  shifted.values = add_scaled(c.values, coboundary_of(k, lifted, c.p), c.p - 1, c.p);
  for (auto e : induced.one_to_parent)
    if (shifted.values[e] != 0) throw VerificationFailure("cocycles", "shifted cocycle does not vanish on the avoided subcomplex");
  return make_nonseparating(k, shifted);
}

RelativeSize relative_size(const TwoComplex& k, const Cochain1& c, std::uint64_t budget) {
  require_matching(k, c);
  const Residue p = c.p;
  const std::size_t ne = k.one_cell_count();
  RelativeSize out;
  out.representative = c.values;
  if (ne == 0) {
    out.value = Rational(0);
    out.exact = true;
    return out;
  }
  if (is_coboundary(k, c)) {
    out.value = Rational(0);
    out.exact = true;
    out.representative.assign(ne, 0);
    return out;
  }
  // Shifts x are taken zero on one root 0-cell per component.
  std::size_t comp_count = 0;
  const auto comp = k.components(&comp_count);
  std::vector<bool> is_root(k.zero_cell_count(), false);
  {
    std::vector<bool> seen(comp_count, false);
    for (std::uint32_t v = 0; v < k.zero_cell_count(); ++v)
      if (!seen[comp[v]]) {
        seen[comp[v]] = true;
        is_root[v] = true;
      }
  }
  std::vector<std::uint32_t> free_vertices;
  for (std::uint32_t v = 0; v < k.zero_cell_count(); ++v)
    if (!is_root[v]) free_vertices.push_back(v);
  std::vector<std::vector<std::pair<std::uint32_t, int>>> incident(k.zero_cell_count());
  for (std::uint32_t e = 0; e < ne; ++e) {
    const auto& cell = k.one_cells()[e];
    if (cell.tail == cell.head) continue;
    incident[cell.tail].push_back({e, -1});
    incident[cell.head].push_back({e, +1});
  }

  VectorFp cur = c.values;
  std::size_t weight = hamming_weight(cur);
  std::size_t best = weight;
  auto shift_vertex = [&](std::uint32_t v, Residue amount) {
    for (const auto& [e, s] : incident[v]) {
      const Residue before = cur[e];
      const Residue delta = s > 0 ? amount : (p - amount) % p;
      cur[e] = static_cast<Residue>((before + delta) % p);
      if (before == 0 && cur[e] != 0) ++weight;
      if (before != 0 && cur[e] == 0) --weight;
    }
  };

  bool fits = true;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < free_vertices.size() && fits; ++i) {
    if (total > budget / p) fits = false;
    total *= p;
  }
  if (fits && total <= budget) {
    // Odometer over all shifts; each step adds 1 at one digit and wraps lower digits.
    std::vector<Residue> digit(free_vertices.size(), 0);
    for (std::uint64_t step = 1; step < total; ++step) {
      std::size_t i = 0;
      while (digit[i] == p - 1) {
        digit[i] = 0;
        shift_vertex(free_vertices[i], 1);  // p−1 + 1 wraps to 0
        ++i;
      }
      ++digit[i];
      shift_vertex(free_vertices[i], 1);
      if (weight < best) {
        best = weight;
        out.representative = cur;
      }
    }
    out.exact = true;
  } else {
    // Greedy single-vertex shifts until no shift lowers the support.
    bool improved = true;
    while (improved) {
      improved = false;
      for (auto v : free_vertices) {
        for (Residue s = 1; s < p; ++s) {
          const std::size_t before = weight;
          shift_vertex(v, s);
          if (weight < before) {
            improved = true;
            break;
          }
          shift_vertex(v, p - s);
        }
      }
    }
    best = weight;
    out.representative = cur;
    out.exact = false;
  }
  out.value = Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(ne));
  return out;
}

}  // namespace homgrowth
