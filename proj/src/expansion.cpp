#include "homgrowth/expansion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "homgrowth/errors.hpp"
#include "homgrowth/words.hpp"

namespace homgrowth {

std::size_t boundary_size(const SchreierGraph& x, const std::vector<bool>& in_a) {
  std::size_t count = 0;
  for (const auto& e : x.edges)
    if (in_a[e.from] != in_a[e.to]) ++count;
  return count;
}

namespace {

using Mask = std::uint64_t;

/// Neighbour lists with multiplicity, loops dropped.
std::vector<std::vector<std::uint32_t>> neighbours(const SchreierGraph& x) {
  std::vector<std::vector<std::uint32_t>> nb(x.vertex_count);
  for (const auto& e : x.edges) {
    if (e.from == e.to) continue;
    nb[e.from].push_back(e.to);
    nb[e.to].push_back(e.from);
  }
  return nb;
}

/// Candidate set with boundary b and size s, ordered for the tie-break rules.
struct Candidate {
  std::uint64_t boundary = 0;
  std::uint64_t size = 0;
  Mask mask = 0;
  bool valid = false;
};

/// a/b compared as fractions: negative, zero, positive.
int compare_ratio(const Candidate& a, const Candidate& b) {
  const auto lhs = static_cast<unsigned __int128>(a.boundary) * b.size;
  const auto rhs = static_cast<unsigned __int128>(b.boundary) * a.size;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Among equal-size masks, true when a's sorted vertex list is lexicographically smaller.
bool lex_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

/// Smallest minimizer: lower ratio, then smaller size, then lexicographic.
bool better_smallest(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  const int c = compare_ratio(a, b);
  if (c != 0) return c < 0;
  if (a.size != b.size) return a.size < b.size;
  return lex_less(a.mask, b.mask);
}

/// Largest minimizer: lower ratio, then larger size, then lexicographic.
bool better_largest(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  const int c = compare_ratio(a, b);
  if (c != 0) return c < 0;
  if (a.size != b.size) return a.size > b.size;
  return lex_less(a.mask, b.mask);
}

std::vector<std::uint32_t> mask_to_vertices(Mask m) {
  std::vector<std::uint32_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

struct ScanResult {
  Candidate smallest;
  Candidate largest;
};

/// Gray-code walk over all subsets of the low `low_bits` vertices with the
/// higher vertices fixed to `prefix`.
ScanResult scan_chunk(const std::vector<std::vector<std::uint32_t>>& nb, std::size_t n, Mask prefix,
                      std::size_t low_bits) {
  ScanResult r;
  const std::uint64_t half = n / 2;
  Mask set = prefix;
  std::int64_t boundary = 0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (set >> v & 1)
      for (auto u : nb[v])
        if (!(set >> u & 1)) ++boundary;
  auto consider = [&] {
    const auto size = static_cast<std::uint64_t>(std::popcount(set));
    if (size == 0 || size > half) return;
    Candidate c{static_cast<std::uint64_t>(boundary), size, set, true};
    if (better_smallest(c, r.smallest)) r.smallest = c;
    if (better_largest(c, r.largest)) r.largest = c;
  };
  consider();
  const std::uint64_t steps = std::uint64_t{1} << low_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(i));
    const bool adding = !(set >> v & 1);
    std::int64_t delta = 0;
    for (auto u : nb[v]) delta += (set >> u & 1) ? -1 : 1;
    boundary += adding ? delta : -delta;
    set ^= Mask{1} << v;
    consider();
  }
  return r;
}

CheegerResult exhaustive(const SchreierGraph& x, unsigned threads) {
  const auto nb = neighbours(x);
  const std::size_t n = x.vertex_count;
  std::size_t top = 0;
  if (threads > 1) top = std::min<std::size_t>(n - 1, std::bit_width(threads - 1) + 2);
  const std::size_t chunks = std::size_t{1} << top;
  std::vector<ScanResult> results(chunks);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t c = begin; c < chunks; c += step)
      results[c] = scan_chunk(nb, n, static_cast<Mask>(c) << (n - top), n - top);
  };
  if (chunks == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  ScanResult best;
  for (const auto& r : results) {
    if (better_smallest(r.smallest, best.smallest)) best.smallest = r.smallest;
    if (better_largest(r.largest, best.largest)) best.largest = r.largest;
  }
  CheegerResult out;
  out.method = CheegerMethod::exact;
  out.value = Rational(static_cast<std::int64_t>(best.smallest.boundary), static_cast<std::int64_t>(best.smallest.size));
  out.witness = mask_to_vertices(best.smallest.mask);
  out.largest_minimizer = mask_to_vertices(best.largest.mask);
  return out;
}

/// Connected sets of size ≤ |V|/2, each visited once (extension by exclusive
/// neighbourhoods with the minimum vertex fixed).
class ConnectedSearch {
 public:
  ConnectedSearch(const SchreierGraph& x, std::uint64_t budget) : n_(x.vertex_count), budget_(budget) {
    nb_ = neighbours(x);
    nb_mask_.assign(n_, 0);
    for (std::uint32_t v = 0; v < n_; ++v)
      for (auto u : nb_[v]) nb_mask_[v] |= Mask{1} << u;
  }

  Candidate run() {
    for (std::uint32_t v = 0; v < n_; ++v) {
      const Mask above = v + 1 >= 64 ? 0 : ~((Mask{1} << (v + 1)) - 1);
      const Mask s = Mask{1} << v;
      extend(s, nb_mask_[v] & above, nb_mask_[v] | s, static_cast<std::int64_t>(nb_[v].size()), 1, above);
    }
    return best_;
  }

 private:
  void extend(Mask s, Mask ext, Mask closed, std::int64_t boundary, std::uint64_t size, Mask above) {
    if (++visited_ > budget_)
      throw BudgetExceeded("expansion", "connected-subset enumeration exceeded " + std::to_string(budget_) + " sets");
    Candidate c{static_cast<std::uint64_t>(boundary), size, s, true};
    if (better_smallest(c, best_)) best_ = c;
    if (size >= n_ / 2) return;
    while (ext != 0) {
      const auto w = static_cast<std::uint32_t>(std::countr_zero(ext));
      ext &= ext - 1;
      std::int64_t inside = 0;
      for (auto u : nb_[w])
        if (s >> u & 1) ++inside;
      const std::int64_t nb = boundary + static_cast<std::int64_t>(nb_[w].size()) - 2 * inside;
      const Mask next_ext = ext | (nb_mask_[w] & ~closed & above);
      extend(s | (Mask{1} << w), next_ext, closed | nb_mask_[w], nb, size + 1, above);
    }
  }

  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  std::vector<std::vector<std::uint32_t>> nb_;
  std::vector<Mask> nb_mask_;
  Candidate best_;
};

std::vector<std::uint32_t> components_of(const SchreierGraph& x, std::size_t* count) {
  std::vector<std::uint32_t> comp(x.vertex_count, UINT32_MAX);
  const auto nb = neighbours(x);
  std::uint32_t next = 0;
  for (std::uint32_t s = 0; s < x.vertex_count; ++s) {
    if (comp[s] != UINT32_MAX) continue;
    std::vector<std::uint32_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto u : nb[v])
        if (comp[u] == UINT32_MAX) {
          comp[u] = next;
          stack.push_back(u);
        }
    }
    ++next;
  }
  *count = next;
  return comp;
}

}  // namespace

CheegerResult cheeger_exact(const SchreierGraph& x, std::size_t max_vertices, std::uint64_t max_connected_sets,
                            unsigned threads) {
  const std::size_t n = x.vertex_count;
  if (n < 2) throw InputError("expansion", "the Cheeger constant needs at least two vertices");
  if (n <= max_vertices && n <= 40) return exhaustive(x, std::max(1u, threads));
  if (n > 64) throw BudgetExceeded("expansion", "exact Cheeger search is limited to 64 vertices");
  ConnectedSearch search(x, max_connected_sets);
  const Candidate best = search.run();
  CheegerResult out;
  out.method = CheegerMethod::exact;
  out.value = Rational(static_cast<std::int64_t>(best.boundary), static_cast<std::int64_t>(best.size));
  out.witness = mask_to_vertices(best.mask);
  return out;
}

CheegerResult cheeger_bounds(const SchreierGraph& x) {
  const std::size_t n = x.vertex_count;
  if (n < 2) throw InputError("expansion", "the Cheeger constant needs at least two vertices");
  CheegerResult out;
  out.method = CheegerMethod::bounds;

  std::size_t comp_count = 0;
  const auto comp = components_of(x, &comp_count);
  if (comp_count > 1) {
    std::vector<std::size_t> sizes(comp_count, 0);
    for (auto c : comp) ++sizes[c];
    const auto smallest = static_cast<std::uint32_t>(std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (std::uint32_t v = 0; v < n; ++v)
      if (comp[v] == smallest) out.witness.push_back(v);
    out.value = Rational(0);
    out.lambda1 = 0.0;
    out.spectral_lower = 0.0;
    out.spectral_upper = 0.0;
    return out;
  }

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& e : x.edges) {
    if (e.from == e.to) continue;
    lap(e.from, e.from) += 1;
    lap(e.to, e.to) += 1;
    lap(e.from, e.to) -= 1;
    lap(e.to, e.from) -= 1;
  }
  double max_degree = 0;
  for (std::size_t v = 0; v < n; ++v) max_degree = std::max(max_degree, lap(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  const double lambda1 = std::max(0.0, solver.eigenvalues()(1));
  const Eigen::VectorXd fiedler = solver.eigenvectors().col(1);

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return fiedler(a) < fiedler(b); });
  std::optional<Rational> best;
  std::vector<std::uint32_t> best_set;
  for (int direction = 0; direction < 2; ++direction) {
    std::vector<bool> in_a(n, false);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const auto v = direction == 0 ? order[k] : order[n - 1 - k];
      in_a[v] = true;
      const Rational r(static_cast<std::int64_t>(boundary_size(x, in_a)), static_cast<std::int64_t>(k + 1));
      if (!best || r < *best) {
        best = r;
        best_set.clear();
        for (std::uint32_t u = 0; u < n; ++u)
          if (in_a[u]) best_set.push_back(u);
      }
    }
  }
  out.value = *best;
  out.witness = best_set;
  out.lambda1 = lambda1;
  out.spectral_lower = std::max(0.0, lambda1 / 2 - 1e-6);
  out.spectral_upper = std::sqrt(2 * max_degree * lambda1) + 1e-6;
  return out;
}

CheegerResult cheeger(const SchreierGraph& x, std::size_t max_vertices, std::uint64_t max_connected_sets,
                      unsigned threads) {
  try {
    return cheeger_exact(x, max_vertices, max_connected_sets, threads);
  } catch (const BudgetExceeded&) {
    return cheeger_bounds(x);
  }
}

MinimizerReport minimizer_structure(const SubnormalChain& chain, std::size_t i, std::size_t max_vertices) {
  if (i == 0 || i >= chain.tables.size()) throw InputError("expansion", "minimizer_structure needs 1 ≤ i < chain length");
  const auto cur = schreier_graph(chain.tables[i]);
  const auto prev = schreier_graph(chain.tables[i - 1]);
  if (cur.vertex_count > max_vertices || prev.vertex_count > max_vertices)
    throw BudgetExceeded("expansion", "minimizer_structure needs exhaustive Cheeger search at both levels");
  MinimizerReport report;
  report.level = i;
  report.vertex_count = cur.vertex_count;
  const auto h_cur = cheeger_exact(cur, max_vertices);
  report.h = h_cur.value;
  if (prev.vertex_count >= 2) report.previous_h = cheeger_exact(prev, max_vertices).value;
  report.strict_decrease = !report.previous_h || report.h < *report.previous_h;
  if (report.strict_decrease) {
    report.minimizer = *h_cur.largest_minimizer;
    const std::size_t d = report.minimizer.size();
    report.compliant = 4 * d > cur.vertex_count && 2 * d <= cur.vertex_count;
  }
  return report;
}

TauDiagnostics tau_diagnostics(const SubnormalChain& chain, std::size_t max_vertices, std::uint64_t max_connected_sets,
                               unsigned threads) {
  TauDiagnostics out;
  out.p = chain.p;
  std::optional<Rational> prev_exact_h;
  std::optional<Rational> prev_gradient;
  std::optional<Rational> first_h, last_h;
  for (const auto& t : chain.tables) {
    TauLevel level;
    level.index = t.index();
    const auto x = schreier_graph(t);
    if (x.vertex_count >= 2) {
      level.cheeger = cheeger(x, max_vertices, max_connected_sets, threads);
      if (level.cheeger->method == CheegerMethod::exact) {
        if (prev_exact_h && *prev_exact_h < level.cheeger->value) out.h_monotone = false;
        prev_exact_h = level.cheeger->value;
      }
      if (!first_h) first_h = level.cheeger->value;
      last_h = level.cheeger->value;
    }
    level.dp = dp(reidemeister_schreier(t), chain.p);
    const auto idx = static_cast<std::int64_t>(t.index());
    level.gradient = Rational(static_cast<std::int64_t>(level.dp) - 1, idx);
    level.normalized_dp = Rational(static_cast<std::int64_t>(level.dp), idx);
    if (prev_gradient && *prev_gradient < level.gradient) out.gradient_monotone = false;
    prev_gradient = level.gradient;
    out.levels.push_back(std::move(level));
  }
  if (!first_h)
    out.hint = "no level with two or more cosets";
  else if (*last_h * Rational(2) <= *first_h)
    out.hint = "h decreasing toward 0 on computed levels";
  else
    out.hint = "h bounded below so far";
  return out;
}

}  // namespace homgrowth
