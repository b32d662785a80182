#include "homgrowth/largeness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "homgrowth/errors.hpp"
#include "homgrowth/expansion.hpp"

namespace homgrowth {

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

std::vector<SignedCell> word_path(const CosetTable& t, std::uint32_t start, const Word& w) {
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  std::vector<SignedCell> path;
  std::uint32_t c = start;
  for (const auto& x : w) {
    if (x.sign > 0) {
      path.push_back({c * n + x.gen, 1});
      c = t.act(c, x);
    } else {
      c = t.act(c, x);
      path.push_back({c * n + x.gen, -1});
    }
  }
  return path;
}

std::vector<SignedCell> reversed(const std::vector<SignedCell>& path) {
  std::vector<SignedCell> out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back({it->cell, static_cast<std::int8_t>(-it->sign)});
  return out;
}

SubComplex restrict_to(const InducedComplex& side, const SubComplex& sub) {
  SubComplex out = SubComplex::empty(side.complex);
  for (std::size_t v = 0; v < side.zero_to_parent.size(); ++v) out.zero[v] = sub.zero[side.zero_to_parent[v]];
  for (std::size_t e = 0; e < side.one_to_parent.size(); ++e) out.one[e] = sub.one[side.one_to_parent[e]];
  for (std::size_t f = 0; f < side.two_to_parent.size(); ++f) out.two[f] = sub.two[side.two_to_parent[f]];
  return out;
}

struct CutProfile {
  std::array<std::size_t, 2> dims{0, 0};
  std::size_t dp_a = 0, dp_b = 0, dp_c = 0;

  std::int64_t exponent() const {
    return static_cast<std::int64_t>(dp_c) - static_cast<std::int64_t>(std::min(dp_a, dp_b));
  }
};

// Kernel dimensions through the dual map: dim ker(H¹(A) → H¹(C)) equals
// d_p(A) minus the rank of H₁(C) → H₁(A).
CutProfile cut_profile(const TwoComplex& k, const CutDecomposition& cut, Residue p) {
  CutProfile out;
  out.dp_c = dp(k, cut.c, p);
  std::array<const SubComplex*, 2> sides{&cut.a, &cut.b};
  for (int i = 0; i < 2; ++i) {
    const auto induced = induced_complex(k, *sides[i]);
    const auto c_local = restrict_to(induced, cut.c);
    const auto d = dp(induced.complex, p);
    (i == 0 ? out.dp_a : out.dp_b) = d;
    out.dims[i] = d - h1_image_rank(induced.complex, {&c_local}, p);
  }
  return out;
}

Rational power_ratio(Residue p, std::int64_t exponent) {
  const auto magnitude = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  const auto value = static_cast<std::int64_t>(pow_u64(p, magnitude));
  return exponent >= 0 ? Rational(value) : Rational(1, value);
}

bool below_threshold(const Rational& hp, Residue p) { return p == 2 ? hp < Rational(1, 2) : hp < Rational(1); }

std::string criterion_failure(const std::array<std::size_t, 2>& dims, Residue p) {
  if (dims[0] == 0 && dims[1] == 0) return "both restriction kernels are zero";
  if (dims[0] == 0) return "restriction kernel of the D side is zero";
  if (dims[1] == 0) return "restriction kernel of the complement side is zero";
  if (p == 2 && std::max(dims[0], dims[1]) < 2) return "p = 2 needs a restriction kernel of dimension at least 2";
  return "";
}

std::vector<bool> d_flags(std::size_t n, const std::vector<std::uint32_t>& d_set) {
  std::vector<bool> flags(n, false);
  for (auto v : d_set) {
    if (v >= n) throw InputError("largeness", "cut vertex out of range");
    flags[v] = true;
  }
  return flags;
}

std::vector<std::uint32_t> d_list(const std::vector<bool>& flags) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < flags.size(); ++v)
    if (flags[v]) out.push_back(v);
  return out;
}

// Based loop at 0-cell 0: tree path to the tail of `edge`, the edge, and the
// tree path back from its head, all avoiding supported 1-cells.
std::optional<std::vector<SignedCell>> based_loop(const TwoComplex& k, const std::vector<bool>& blocked,
                                                  std::uint32_t edge) {
  const std::size_t nv = k.zero_cell_count();
  std::vector<std::vector<SignedCell>> adjacency(nv);
  for (std::uint32_t e = 0; e < k.one_cell_count(); ++e) {
    if (blocked[e]) continue;
    adjacency[k.one_cells()[e].tail].push_back({e, 1});
    adjacency[k.one_cells()[e].head].push_back({e, -1});
  }
  std::vector<bool> seen(nv, false);
  std::vector<SignedCell> parent(nv);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& x : adjacency[v]) {
      const auto w = k.end(x);
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = x;
      queue.push_back(w);
    }
  }
  auto path_to = [&](std::uint32_t v) {
    std::vector<SignedCell> path;
    while (v != 0) {
      path.push_back(parent[v]);
      v = k.start(parent[v]);
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  const auto& cell = k.one_cells()[edge];
  if (!seen[cell.tail] || !seen[cell.head]) return std::nullopt;
  auto loop = path_to(cell.tail);
  loop.push_back({edge, 1});
  for (const auto& x : reversed(path_to(cell.head))) loop.push_back(x);
  return loop;
}

std::optional<RegularModPCocycle> side_cocycle(const TwoComplex& k, const InducedComplex& side, const SubComplex& c_local,
                                               const VectorFp& values, Residue p) {
  const auto result = relative_nonseparating(side.complex, c_local, Cochain1{p, values});
  if (result.trivial_class()) return std::nullopt;
  Cochain1 lifted{p, VectorFp(k.one_cell_count(), 0)};
  for (std::size_t e = 0; e < side.one_to_parent.size(); ++e)
    lifted.values[side.one_to_parent[e]] = result.representative.values[e];
  return regularize(k, lifted);
}

CertifyOutcome certify_on(const TwoComplex& k, const CosetTable& cover, const CutDecomposition& cut,
                          const CutProfile& profile, const std::vector<bool>& d_set, Residue p) {
  CertifyOutcome out;
  out.failure.kernel_dims = profile.dims;
  const auto reason = criterion_failure(profile.dims, p);
  if (!reason.empty()) {
    out.failure.reason = reason;
    return out;
  }
  const auto kernels = restriction_kernels(k, cut, p);
  if (kernels.dims != profile.dims)
    throw VerificationFailure("largeness", "restriction kernel dimensions disagree between methods");

  std::array<std::vector<RegularModPCocycle>, 2> candidates;
  for (int i = 0; i < 2; ++i)
    for (const auto& v : kernels.cocycles[i])
      if (auto g = side_cocycle(k, kernels.sides[i], kernels.c_in_side[i], v, p)) candidates[i].push_back(std::move(*g));

  const std::size_t target = k.component_count();
  for (const auto& ga : candidates[0]) {
    for (const auto& gb : candidates[1]) {
      const auto joint = disjoint_union({ga, gb});
      if (complement_components(k, joint).component_count != target) continue;
      std::vector<bool> blocked(k.one_cell_count(), false);
      for (const auto& ev : joint.edge_vertices) blocked[ev.cell] = true;
      LargenessCertificate cert{p, cover, d_list(d_set), profile.dims, {ga, gb}, {}, {}, false};
      bool loops_ok = true;
      for (const auto& g : cert.cocycles) {
        auto loop = based_loop(k, blocked, g.edge_vertices.front().cell);
        if (!loop) {
          loops_ok = false;
          break;
        }
        cert.witness_loops.push_back(std::move(*loop));
      }
      if (!loops_ok) continue;
      cert.generator_images = epimorphism_images(cert, &cert.images_for_schreier_generators);
      out.certificate = std::move(cert);
      return out;
    }
  }
  out.failure.reason = candidates[0].empty() || candidates[1].empty()
                           ? "no kernel class gave a non-separating side cocycle"
                           : "every pair of side cocycles separates the cover";
  return out;
}

}  // namespace

FreeProductWord reduce_free_product(const FreeProductWord& w, Residue p) {
  FreeProductWord out;
  for (auto x : w) {
    x.exponent %= p;
    if (x.exponent == 0) continue;
    if (!out.empty() && out.back().factor == x.factor) {
      out.back().exponent = (out.back().exponent + x.exponent) % p;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

std::string free_product_to_string(const FreeProductWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& x : w) {
    if (!s.empty()) s += ' ';
    s += "x" + std::to_string(x.factor + 1);
    if (x.exponent != 1) s += "^" + std::to_string(x.exponent);
  }
  return s;
}

FreeProductWord crossing_word(const std::vector<RegularModPCocycle>& cocycles, const std::vector<SignedCell>& path) {
  if (cocycles.empty()) return {};
  const Residue p = cocycles.front().p;
  std::map<std::uint32_t, std::pair<std::uint32_t, Residue>> crossing;
  for (std::uint32_t i = 0; i < cocycles.size(); ++i)
    for (const auto& ev : cocycles[i].edge_vertices) crossing[ev.cell] = {i, ev.weight};
  FreeProductWord w;
  for (const auto& x : path) {
    const auto it = crossing.find(x.cell);
    if (it == crossing.end()) continue;
    const auto [factor, weight] = it->second;
    w.push_back({factor, x.sign > 0 ? weight : (p - weight) % p});
  }
  return reduce_free_product(w, p);
}

RestrictionKernels restriction_kernels(const TwoComplex& k, const CutDecomposition& cut, Residue p) {
  RestrictionKernels out;
  const auto c_complex = induced_complex(k, cut.c);
  const auto boundary = boundary1(c_complex.complex, p);
  const std::size_t ec = c_complex.one_to_parent.size();
  out.dp_c = dp(c_complex.complex, p);
  std::array<const SubComplex*, 2> sides{&cut.a, &cut.b};
  for (int i = 0; i < 2; ++i) {
    out.sides[i] = induced_complex(k, *sides[i]);
    out.c_in_side[i] = restrict_to(out.sides[i], cut.c);
    const auto basis = cohomology_basis(out.sides[i].complex, p);
    (i == 0 ? out.dp_a : out.dp_b) = basis.size();

    // Rows: restrictions of the basis cocycles to C, then the rows of ∂₁(C)
    // spanning the coboundaries of C. A kernel vector of the transpose
    // projected to the first block is a class restricting to a coboundary.
    MatrixFp m(p, 0, ec);
    for (const auto& b : basis) {
      VectorFp r(ec);
      for (std::size_t j = 0; j < ec; ++j) r[j] = b[out.sides[i].one_from_parent[c_complex.one_to_parent[j]]];
      m.append_row(r);
    }
    for (std::size_t v = 0; v < boundary.rows(); ++v) m.append_row(boundary.row(v));
    SpanBuilder chosen(p, basis.size());
    for (const auto& x : kernel_basis(m.transpose())) {
      VectorFp coeffs(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(basis.size()));
      if (!chosen.add(coeffs)) continue;
      VectorFp values(out.sides[i].one_to_parent.size(), 0);
      for (std::size_t j = 0; j < basis.size(); ++j) values = add_scaled(values, basis[j], coeffs[j], p);
      out.cocycles[i].push_back(std::move(values));
    }
    out.dims[i] = out.cocycles[i].size();
  }
  return out;
}

Rational hp_upper_bound(const TwoComplex& k, const std::vector<bool>& d_set, Residue p) {
  require_prime(p, "largeness");
  const auto cut = cut_decomposition(k, d_set);
  const auto dp_a = dp(k, cut.a, p);
  const auto dp_b = dp(k, cut.b, p);
  const auto dp_c = dp(k, cut.c, p);
  return power_ratio(p, static_cast<std::int64_t>(dp_c) - static_cast<std::int64_t>(std::min(dp_a, dp_b)));
}

CertifyOutcome certify_from_cut(const CosetTable& cover, const std::vector<bool>& d_set, Residue p) {
  require_prime(p, "largeness");
  const auto k = covering_complex(cover);
  const auto cut = cut_decomposition(k, d_set);
  return certify_on(k, cover, cut, cut_profile(k, cut, p), d_set, p);
}

std::vector<FreeProductWord> epimorphism_images(const LargenessCertificate& cert, bool* schreier) {
  const auto& t = cert.cover;
  std::vector<FreeProductWord> images;
  if (t.index() == 1) {
    if (schreier) *schreier = false;
    for (std::uint32_t s = 0; s < t.generator_count(); ++s) images.push_back(crossing_word(cert.cocycles, {{s, 1}}));
    return images;
  }
  if (schreier) *schreier = true;
  const auto tree = spanning_tree(t);
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  for (auto edge : tree.free_edges) {
    const std::uint32_t c = edge / n;
    const std::uint32_t s = edge % n;
    auto path = word_path(t, 0, tree.transversal[c]);
    path.push_back({edge, 1});
    for (const auto& x : reversed(word_path(t, 0, tree.transversal[t.perm(s)[c]]))) path.push_back(x);
    images.push_back(crossing_word(cert.cocycles, path));
  }
  return images;
}

void verify_certificate(const LargenessCertificate& cert) {
  auto fail = [](const std::string& what) { throw VerificationFailure("largeness", what); };
  if (!is_prime(cert.p)) fail("p is not prime");
  const auto k = covering_complex(cert.cover);
  if (cert.cocycles.size() < 2) fail("a certificate needs at least two cocycles");
  for (std::size_t i = 0; i < cert.cocycles.size(); ++i) {
    const auto& g = cert.cocycles[i];
    if (g.p != cert.p) fail("cocycle " + std::to_string(i) + " uses a different prime");
    if (g.edge_vertices.empty()) fail("cocycle " + std::to_string(i) + " is empty");
    const auto problem = check_regular(k, g);
    if (!problem.empty()) fail("cocycle " + std::to_string(i) + " is not regular: " + problem);
  }
  RegularModPCocycle joint;
  try {
    joint = disjoint_union(cert.cocycles);
  } catch (const InputError& e) {
    fail(std::string("cocycles are not disjoint: ") + e.what());
  }
  if (complement_components(k, joint).component_count != k.component_count())
    fail("union of the cocycles separates the cover");

  if (cert.witness_loops.size() != cert.cocycles.size()) fail("need one witness loop per cocycle");
  for (std::size_t i = 0; i < cert.witness_loops.size(); ++i) {
    const auto& loop = cert.witness_loops[i];
    const std::string name = "witness loop " + std::to_string(i);
    if (loop.empty()) fail(name + " is empty");
    for (const auto& x : loop)
      if (x.cell >= k.one_cell_count() || (x.sign != 1 && x.sign != -1)) fail(name + " uses an invalid 1-cell");
    if (k.start(loop.front()) != 0 || k.end(loop.back()) != 0) fail(name + " is not based at the basepoint");
    for (std::size_t j = 0; j + 1 < loop.size(); ++j)
      if (k.end(loop[j]) != k.start(loop[j + 1])) fail(name + " is not an edge path");
    for (std::size_t c = 0; c < cert.cocycles.size(); ++c) {
      std::size_t crossings = 0;
      std::int64_t weight = 0;
      for (const auto& x : loop)
        for (const auto& ev : cert.cocycles[c].edge_vertices)
          if (ev.cell == x.cell) {
            ++crossings;
            weight += x.sign * static_cast<std::int64_t>(ev.weight);
          }
      if (c == i && (crossings != 1 || reduce_mod(weight, cert.p) == 0))
        fail(name + " does not cross its cocycle exactly once with nonzero weight");
      if (c != i && crossings != 0) fail(name + " crosses cocycle " + std::to_string(c));
    }
    const auto word = crossing_word(cert.cocycles, loop);
    if (word.size() != 1 || word.front().factor != i) fail(name + " does not map to a power of its generator");
  }

  bool schreier = false;
  if (epimorphism_images(cert, &schreier) != cert.generator_images || schreier != cert.images_for_schreier_generators)
    fail("generator images do not match the crossing words");

  if (!std::is_sorted(cert.d_set.begin(), cert.d_set.end()) ||
      std::adjacent_find(cert.d_set.begin(), cert.d_set.end()) != cert.d_set.end())
    fail("cut set is not sorted and duplicate-free");
  if (cert.d_set.empty() || cert.d_set.size() >= k.zero_cell_count() || cert.d_set.back() >= k.zero_cell_count())
    fail("cut set is not a proper non-empty vertex set");
  const auto cut = cut_decomposition(k, d_flags(k.zero_cell_count(), cert.d_set));
  const auto profile = cut_profile(k, cut, cert.p);
  if (profile.dims != cert.kernel_dims) fail("recorded restriction kernel dimensions are wrong");
  if (!criterion_failure(profile.dims, cert.p).empty()) fail("kernel criterion does not hold on the cut");
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& side = i == 0 ? cut.a : cut.b;
    for (const auto& ev : cert.cocycles[i].edge_vertices)
      if (!side.one[ev.cell] || cut.c.one[ev.cell]) fail("cocycle " + std::to_string(i) + " leaves its side of the cut");
  }
}

namespace {

// Data shared by every cut of one cover.
struct DiagnosticContext {
  const TwoComplex& k;
  SchreierGraph x;
  SubComplex gamma;
  std::size_t labels = 0;
  std::size_t dp_k = 0;
  std::size_t relator_length = 0;
};

DiagnosticContext diagnostic_context(const CosetTable& t, const TwoComplex& k, Residue p,
                                     const std::vector<std::uint32_t>& basis_labels) {
  if (!is_homology_basis(t.presentation(), p, basis_labels))
    throw InputError("largeness", "basis labels do not map onto a basis of first homology");
  return {k, schreier_graph(t), labelled_subgraph_pullback(t, basis_labels), basis_labels.size(), dp(k, p),
          t.presentation().total_length()};
}

CutDiagnostics diagnostics_on(const DiagnosticContext& ctx, const CutDecomposition& cut, const CutProfile& profile,
                              const std::vector<bool>& d_set, Residue p) {
  const auto& k = ctx.k;
  CutDiagnostics out;
  out.d_set = d_list(d_set);
  out.boundary = boundary_size(ctx.x, d_set);
  out.h_value = Rational(static_cast<std::int64_t>(out.boundary), static_cast<std::int64_t>(out.d_set.size()));
  out.dp_a = profile.dp_a;
  out.dp_b = profile.dp_b;
  out.dp_c = profile.dp_c;
  out.hp_exponent = profile.exponent();

  std::vector<bool> mixed_edge(k.one_cell_count(), false);
  for (const auto& w : k.two_cells()) {
    bool in_d = false, out_d = false;
    for (const auto& x : w) (d_set[k.start(x)] ? in_d : out_d) = true;
    if (in_d && out_d)
      for (const auto& x : w) mixed_edge[x.cell] = true;
  }
  for (std::uint32_t e = 0; e < k.one_cell_count(); ++e) {
    if (!ctx.gamma.one[e] || !cut.a.one[e]) continue;
    const bool tail = d_set[k.one_cells()[e].tail];
    const bool head = d_set[k.one_cells()[e].head];
    if (tail && head) ++out.type_i;
    if (tail != head) ++out.type_ii;
    if (mixed_edge[e]) ++out.type_iii;
  }
  out.c_vertices = cut.c.count0();
  const std::size_t l = ctx.relator_length;
  out.bound_i = out.d_set.size() * ctx.labels;
  out.bound_ii_iii = out.boundary * (l * l + 1);
  out.bound_c_vertices = out.boundary * (l * l + 2);

  const auto gamma_a = subcomplex_intersection(ctx.gamma, cut.a);
  const auto gamma_b = subcomplex_intersection(ctx.gamma, cut.b);
  const auto gamma_c = subcomplex_intersection(ctx.gamma, cut.c);
  out.mv_codimension = ctx.dp_k - h1_image_rank(k, {&gamma_a, &gamma_b}, p);
  out.gamma_c_components = graph_component_count(k, gamma_c);
  return out;
}

}  // namespace

CutDiagnostics cut_diagnostics(const CosetTable& t, const std::vector<bool>& d_set, Residue p,
                               const std::vector<std::uint32_t>& basis_labels) {
  require_prime(p, "largeness");
  const auto k = covering_complex(t);
  const auto ctx = diagnostic_context(t, k, p, basis_labels);
  const auto cut = cut_decomposition(k, d_set);
  return diagnostics_on(ctx, cut, cut_profile(k, cut, p), d_set, p);
}

double epsilon_threshold() { return std::sqrt(10.0) / 3.0 - 1.0; }

std::vector<std::vector<bool>> candidate_cuts(const CosetTable& t, const SweepOptions& options) {
  const std::size_t n = t.index();
  std::vector<std::vector<bool>> cuts;
  if (n < 2) return cuts;
  // Cuts and their complements give the same decomposition with sides
  // swapped; keep the orientation containing vertex 0.
  if (n <= 63 && (std::uint64_t{1} << (n - 1)) <= options.exhaustive_limit) {
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask + 1 < total; ++mask) {
      std::vector<bool> d(n, false);
      d[0] = true;
      for (std::size_t v = 1; v < n; ++v) d[v] = (mask >> (v - 1)) & 1;
      cuts.push_back(std::move(d));
    }
    return cuts;
  }

  std::set<std::vector<bool>> seen;
  auto add = [&](std::vector<bool> d) {
    const auto size = static_cast<std::size_t>(std::count(d.begin(), d.end(), true));
    if (size == 0 || size == n) return;
    if (!d[0]) d.flip();
    if (seen.insert(d).second) cuts.push_back(std::move(d));
  };
  auto add_list = [&](const std::vector<std::uint32_t>& vs) {
    std::vector<bool> d(n, false);
    for (auto v : vs) d[v] = true;
    add(std::move(d));
  };

  const auto x = schreier_graph(t);
  CheegerResult h;
  try {
    h = cheeger_exact(x, options.max_vertices, options.max_connected_sets, options.threads);
  } catch (const BudgetExceeded&) {
    h = cheeger_bounds(x);
  }
  add_list(h.witness);
  if (h.largest_minimizer) add_list(*h.largest_minimizer);

  std::vector<std::vector<std::uint32_t>> adjacency(n);
  for (const auto& e : x.edges) {
    adjacency[e.from].push_back(e.to);
    adjacency[e.to].push_back(e.from);
  }
  for (std::uint32_t centre = 0; centre < n; ++centre) {
    std::vector<std::uint32_t> dist(n, kNone);
    std::deque<std::uint32_t> queue{centre};
    dist[centre] = 0;
    std::uint32_t radius = 0;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      radius = std::max(radius, dist[v]);
      for (auto w : adjacency[v])
        if (dist[w] == kNone) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    for (std::uint32_t r = 0; r < radius; ++r) {
      std::vector<bool> d(n);
      for (std::size_t v = 0; v < n; ++v) d[v] = dist[v] <= r;
      add(std::move(d));
    }
  }
  return cuts;
}

namespace {

struct WeightedCut {
  std::vector<bool> d;
  std::size_t weight = 1;  // cuts of the orbit containing vertex 0
};

// One representative per deck-group orbit of the cuts containing vertex 0:
// the smallest mask among the orbit members that contain vertex 0. Empty when
// the reduction does not apply.
std::vector<WeightedCut> orbit_cuts(const CosetTable& t, const SweepOptions& options) {
  const std::size_t n = t.index();
  if (!options.use_symmetry || n < 3 || n > 63 || (std::uint64_t{1} << (n - 1)) > options.exhaustive_limit) return {};
  if (!is_normal_in(t, whole_group(t.presentation_ptr()))) return {};
  const auto tree = spanning_tree(t);
  std::vector<std::vector<std::uint32_t>> deck;
  for (std::uint32_t c = 0; c < n; ++c) deck.push_back(deck_transformation(t, tree.transversal[c]));
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<WeightedCut> out;
  std::vector<std::uint64_t> members;
  for (std::uint64_t mask = 1; mask < full; mask += 2) {
    members.clear();
    bool representative = true;
    for (const auto& g : deck) {
      std::uint64_t image = 0;
      for (std::uint64_t rest = mask; rest; rest &= rest - 1)
        image |= std::uint64_t{1} << g[static_cast<std::size_t>(__builtin_ctzll(rest))];
      if (!(image & 1)) continue;
      if (image < mask) {
        representative = false;
        break;
      }
      members.push_back(image);
    }
    if (!representative) continue;
    std::sort(members.begin(), members.end());
    const auto distinct = static_cast<std::size_t>(std::unique(members.begin(), members.end()) - members.begin());
    std::vector<bool> d(n);
    for (std::size_t v = 0; v < n; ++v) d[v] = (mask >> v) & 1;
    out.push_back({std::move(d), distinct});
  }
  return out;
}

struct CutResult {
  CertifyOutcome outcome;
  Rational hp;
  std::optional<CutDiagnostics> diagnostics;
};

CutResult evaluate_cut(const TwoComplex& k, const CosetTable& t, const std::vector<bool>& d, Residue p,
                       const DiagnosticContext* ctx) {
  CutResult r;
  const auto cut = cut_decomposition(k, d);
  const auto profile = cut_profile(k, cut, p);
  r.hp = power_ratio(p, profile.exponent());
  r.outcome = certify_on(k, t, cut, profile, d, p);
  if (ctx) r.diagnostics = diagnostics_on(*ctx, cut, profile, d, p);
  return r;
}

}  // namespace

SweepReport sweep_cover(const CosetTable& t, Residue p, const SweepOptions& options) {
  require_prime(p, "largeness");
  SweepReport report;
  auto cuts = orbit_cuts(t, options);
  if (cuts.empty())
    for (auto& d : candidate_cuts(t, options)) cuts.push_back({std::move(d), 1});
  if (cuts.empty()) return report;
  const auto k = covering_complex(t);
  std::optional<DiagnosticContext> ctx;
  if (options.diagnostics) ctx.emplace(diagnostic_context(t, k, p, homology_basis_labels(t.presentation(), p)));
  const unsigned threads = std::max(1u, options.threads);
  const std::size_t block = options.stop_at_first ? std::size_t{threads} * 4 : cuts.size();

  for (std::size_t begin = 0; begin < cuts.size(); begin += block) {
    const std::size_t end = std::min(cuts.size(), begin + block);
    std::vector<std::optional<CutResult>> results(end - begin);
    std::atomic<std::size_t> next{begin};
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned id) {
      try {
        for (std::size_t i = next++; i < end; i = next++)
          results[i - begin] = evaluate_cut(k, t, cuts[i].d, p, ctx ? &*ctx : nullptr);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
      for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);

    for (std::size_t i = 0; i < results.size(); ++i) {
      auto& r = results[i];
      const std::size_t weight = cuts[begin + i].weight;
      report.cuts_tried += weight;
      ++report.cuts_evaluated;
      const auto& dims = r->outcome.success() ? r->outcome.certificate->kernel_dims : r->outcome.failure.kernel_dims;
      report.min_kernel_dim = std::min(report.min_kernel_dim, std::min(dims[0], dims[1]));
      for (int i = 0; i < 2; ++i) report.max_kernel_dims[i] = std::max(report.max_kernel_dims[i], dims[i]);
      if (!report.best_hp || r->hp < *report.best_hp) report.best_hp = r->hp;
      if (below_threshold(r->hp, p) && !r->outcome.success()) report.threshold_without_certificate += weight;
      if (r->diagnostics) {
        report.diagnostics_run += weight;
        if (!r->diagnostics->all_ok()) {
          report.bound_violations += weight;
          report.violations.push_back(*r->diagnostics);
        }
      }
      if (r->outcome.success()) {
        report.successes += weight;
        if (!report.certificate) report.certificate = std::move(r->outcome.certificate);
        if (options.stop_at_first) return report;
      }
    }
  }
  return report;
}

}  // namespace homgrowth
