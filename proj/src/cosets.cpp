#include "homgrowth/cosets.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "homgrowth/errors.hpp"

namespace homgrowth {

namespace {

constexpr std::uint32_t kUndefined = 0xffffffffu;

std::vector<std::uint32_t> invert_perm(const std::vector<std::uint32_t>& perm) {
  std::vector<std::uint32_t> inv(perm.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

}  // namespace

CosetTable::CosetTable(std::shared_ptr<const Presentation> pres, std::vector<std::vector<std::uint32_t>> action)
    : pres_(std::move(pres)), action_(std::move(action)) {
  if (!pres_) throw InputError("cosets", "coset table needs a presentation");
  if (action_.size() != pres_->generator_count())
    throw InputError("cosets", "coset table needs one permutation per generator");
  index_ = action_.front().size();
  if (index_ == 0) throw InputError("cosets", "coset table has no cosets");
  for (const auto& perm : action_) {
    if (perm.size() != index_) throw InputError("cosets", "permutations of unequal degree");
    std::vector<bool> seen(index_, false);
    for (auto v : perm) {
      if (v >= index_ || seen[v]) throw InputError("cosets", "generator does not act as a bijection");
      seen[v] = true;
    }
    inverse_.push_back(invert_perm(perm));
  }
  for (const auto& r : pres_->relators())
    for (std::uint32_t c = 0; c < index_; ++c)
      if (trace(c, r) != c)
        throw InputError("cosets", "relator trace does not close at coset " + std::to_string(c));
  std::vector<bool> seen(index_, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    for (std::uint32_t g = 0; g < action_.size(); ++g)
      for (auto d : {action_[g][c], inverse_[g][c]})
        if (!seen[d]) {
          seen[d] = true;
          ++reached;
          stack.push_back(d);
        }
  }
  if (reached != index_) throw InputError("cosets", "action is not transitive");
}

std::uint32_t CosetTable::trace(std::uint32_t coset, const Word& w) const {
  for (const auto& x : w) coset = act(coset, x);
  return coset;
}

namespace {

/// BFS order from coset 0 over s₀, s₀⁻¹, s₁, s₁⁻¹, …; returns new number of
/// each old coset.
std::vector<std::uint32_t> bfs_numbering(const CosetTable& t) {
  std::vector<std::uint32_t> number(t.index(), kUndefined);
  std::vector<std::uint32_t> order{0};
  number[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto c = order[head];
    for (std::uint32_t g = 0; g < t.generator_count(); ++g)
      for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
        const auto d = t.act(c, {g, s});
        if (number[d] == kUndefined) {
          number[d] = static_cast<std::uint32_t>(order.size());
          order.push_back(d);
        }
      }
  }
  return number;
}

}  // namespace

CosetTable CosetTable::standardized() const {
  const auto number = bfs_numbering(*this);
  std::vector<std::vector<std::uint32_t>> action(action_.size(), std::vector<std::uint32_t>(index_));
  for (std::size_t g = 0; g < action_.size(); ++g)
    for (std::uint32_t c = 0; c < index_; ++c) action[g][number[c]] = number[action_[g][c]];
  return CosetTable(pres_, std::move(action));
}

std::vector<std::size_t> SchreierGraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) {
    ++deg[e.from];
    ++deg[e.to];
  }
  return deg;
}

// ---------------------------------------------------------------------------
// Todd–Coxeter

namespace {

class Enumerator {
 public:
  Enumerator(const Presentation& pres, std::size_t max_cosets)
      : cols_(2 * pres.generator_count()), max_live_(max_cosets) {
    for (const auto& r : pres.relators()) relators_.push_back(columns(r));
    new_coset();
  }

  static std::vector<std::uint32_t> columns(const Word& w) {
    std::vector<std::uint32_t> out;
    out.reserve(w.size());
    for (const auto& x : w) out.push_back(2 * x.gen + (x.sign < 0 ? 1 : 0));
    return out;
  }

  void run(const std::vector<std::vector<std::uint32_t>>& subgroup_gens) {
    for (const auto& w : subgroup_gens) scan(0, w, true);
    for (std::uint32_t c = 0; c < table_.size(); ++c) {
      for (const auto& r : relators_) {
        if (!alive(c)) break;
        scan(c, r, true);
      }
      for (std::uint32_t x = 0; x < cols_ && alive(c); ++x)
        if (table_[c][x] == kUndefined) define(c, x);
    }
  }

  /// Live cosets renumbered consecutively, as per-generator permutations.
  std::vector<std::vector<std::uint32_t>> action() const {
    std::vector<std::uint32_t> number(table_.size(), kUndefined);
    std::uint32_t next = 0;
    for (std::uint32_t c = 0; c < table_.size(); ++c)
      if (alive(c)) number[c] = next++;
    std::vector<std::vector<std::uint32_t>> out(cols_ / 2, std::vector<std::uint32_t>(next));
    for (std::uint32_t c = 0; c < table_.size(); ++c)
      if (alive(c))
        for (std::uint32_t g = 0; g < cols_ / 2; ++g) out[g][number[c]] = number[table_[c][2 * g]];
    return out;
  }

 private:
  bool alive(std::uint32_t c) const { return parent_[c] == c; }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) c = std::exchange(parent_[c], r);
    return r;
  }

  std::uint32_t new_coset() {
    const auto id = static_cast<std::uint32_t>(table_.size());
    table_.emplace_back(cols_, kUndefined);
    parent_.push_back(id);
    ++live_;
    return id;
  }

  void define(std::uint32_t c, std::uint32_t x) {
    if (live_ >= max_live_) {
      lookahead();
      if (!alive(c) || table_[c][x] != kUndefined) return;
      if (live_ >= max_live_)
        throw BudgetExceeded("cosets", "coset enumeration exceeded " + std::to_string(max_live_) +
                                           " cosets (index may be infinite)");
    }
    if (table_.size() >= 16 * max_live_ + 1024)
      throw BudgetExceeded("cosets", "coset enumeration exhausted its total definition budget");
    const auto d = new_coset();
    table_[c][x] = d;
    table_[d][x ^ 1] = c;
  }

  /// Scans w from coset c; with `fill`, defines cosets to complete the scan.
  void scan(std::uint32_t c, const std::vector<std::uint32_t>& w, bool fill) {
    if (w.empty()) return;
    while (true) {
      std::uint32_t f = c;
      std::size_t i = 0;
      std::uint32_t b = c;
      std::size_t j = w.size();
      while (i < j && table_[f][w[i]] != kUndefined) f = table_[f][w[i++]];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && table_[b][w[j - 1] ^ 1] != kUndefined) b = table_[b][w[--j] ^ 1];
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_[f][w[i]] = b;
        table_[b][w[i] ^ 1] = f;
        return;
      }
      if (!fill) return;
      define(f, w[i]);
      if (!alive(c)) return;
    }
  }

  void lookahead() {
    for (std::uint32_t c = 0; c < table_.size(); ++c)
      for (const auto& r : relators_) {
        if (!alive(c)) break;
        scan(c, r, false);
      }
  }

  void merge(std::uint32_t a, std::uint32_t b, std::deque<std::uint32_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue.push_back(b);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    std::deque<std::uint32_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const auto e = queue.front();
      queue.pop_front();
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const auto f = table_[e][x];
        if (f == kUndefined) continue;
        if (table_[f][x ^ 1] == e) table_[f][x ^ 1] = kUndefined;
        const auto e1 = rep(e);
        const auto f1 = rep(f);
        if (table_[e1][x] != kUndefined)
          merge(f1, table_[e1][x], queue);
        else if (table_[f1][x ^ 1] != kUndefined)
          merge(e1, table_[f1][x ^ 1], queue);
        else {
          table_[e1][x] = f1;
          table_[f1][x ^ 1] = e1;
        }
      }
    }
  }

  std::uint32_t cols_;
  std::size_t max_live_;
  std::size_t live_ = 0;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> parent_;
};

}  // namespace

CosetTable todd_coxeter(std::shared_ptr<const Presentation> pres, const std::vector<Word>& subgroup_gens,
                        std::size_t max_cosets) {
  if (!pres) throw InputError("cosets", "todd_coxeter needs a presentation");
  if (max_cosets < 1) throw InputError("cosets", "max_cosets must be at least 1");
  for (const auto& w : subgroup_gens)
    for (const auto& x : w)
      if (x.gen >= pres->generator_count()) throw InputError("cosets", "subgroup generator letter out of range");
  std::vector<std::vector<std::uint32_t>> gens;
  for (const auto& w : subgroup_gens) gens.push_back(Enumerator::columns(free_reduce(w)));
  Enumerator e(*pres, max_cosets);
  e.run(gens);
  return CosetTable(pres, e.action()).standardized();
}

CosetTable from_quotient(std::shared_ptr<const Presentation> pres, const FiniteQuotientSpec& spec, std::uint32_t point) {
  spec.validate(*pres);
  if (point >= spec.degree) throw InputError("cosets", "base point outside the permutation domain");
  std::vector<std::uint32_t> number(spec.degree, kUndefined);
  std::vector<std::uint32_t> orbit{point};
  number[point] = 0;
  for (std::size_t head = 0; head < orbit.size(); ++head)
    for (std::uint32_t g = 0; g < pres->generator_count(); ++g)
      for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
        const auto d = spec.act(orbit[head], {g, s});
        if (number[d] == kUndefined) {
          number[d] = static_cast<std::uint32_t>(orbit.size());
          orbit.push_back(d);
        }
      }
  std::vector<std::vector<std::uint32_t>> action(pres->generator_count(), std::vector<std::uint32_t>(orbit.size()));
  for (std::uint32_t g = 0; g < pres->generator_count(); ++g)
    for (std::uint32_t c = 0; c < orbit.size(); ++c) action[g][c] = number[spec.images[g][orbit[c]]];
  return CosetTable(std::move(pres), std::move(action));
}

CosetTable whole_group(std::shared_ptr<const Presentation> pres) {
  const auto n = pres->generator_count();
  return CosetTable(std::move(pres), std::vector<std::vector<std::uint32_t>>(n, std::vector<std::uint32_t>{0}));
}

SchreierGraph schreier_graph(const CosetTable& t) {
  SchreierGraph g;
  g.vertex_count = t.index();
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  g.edges.reserve(t.index() * n);
  for (std::uint32_t c = 0; c < t.index(); ++c)
    for (std::uint32_t s = 0; s < n; ++s) g.edges.push_back({c, t.perm(s)[c], s});
  return g;
}

// ---------------------------------------------------------------------------
// Reidemeister–Schreier

SpanningTree spanning_tree(const CosetTable& t) {
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  SpanningTree tree;
  tree.is_tree_edge.assign(t.index() * n, false);
  tree.transversal.assign(t.index(), Word{});
  std::vector<bool> seen(t.index(), false);
  std::vector<std::uint32_t> order{0};
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto c = order[head];
    for (std::uint32_t s = 0; s < n; ++s) {
      const auto fwd = t.act(c, {s, 1});
      if (!seen[fwd]) {
        seen[fwd] = true;
        tree.is_tree_edge[c * n + s] = true;
        tree.transversal[fwd] = concat(tree.transversal[c], Word{{s, 1}});
        order.push_back(fwd);
      }
      const auto back = t.act(c, {s, -1});
      if (!seen[back]) {
        seen[back] = true;
        tree.is_tree_edge[back * n + s] = true;
        tree.transversal[back] = concat(tree.transversal[c], Word{{s, -1}});
        order.push_back(back);
      }
    }
  }
  for (std::uint32_t e = 0; e < tree.is_tree_edge.size(); ++e)
    if (!tree.is_tree_edge[e]) tree.free_edges.push_back(e);
  return tree;
}

std::vector<Word> schreier_generators(const CosetTable& t) {
  const auto tree = spanning_tree(t);
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  std::vector<Word> gens;
  for (auto e : tree.free_edges) {
    const std::uint32_t c = e / n, s = e % n;
    Word w = concat(tree.transversal[c], Word{{s, 1}});
    gens.push_back(free_reduce(concat(w, inverse(tree.transversal[t.perm(s)[c]]))));
  }
  return gens;
}

namespace {

/// For each edge number, the index of its Schreier generator or kUndefined
/// for tree edges.
std::vector<std::uint32_t> free_edge_index(const SpanningTree& tree) {
  std::vector<std::uint32_t> idx(tree.is_tree_edge.size(), kUndefined);
  for (std::uint32_t k = 0; k < tree.free_edges.size(); ++k) idx[tree.free_edges[k]] = k;
  return idx;
}

/// Rewrites the trace of w from coset c as a word in the Schreier generators.
Word rewrite(const CosetTable& t, const std::vector<std::uint32_t>& edge_gen, std::uint32_t c, const Word& w) {
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  Word out;
  for (const auto& x : w) {
    const std::uint32_t from = x.sign > 0 ? c : t.act(c, x);
    const auto k = edge_gen[from * n + x.gen];
    if (k != kUndefined) out.push_back({k, x.sign});
    c = t.act(c, x);
  }
  return out;
}

}  // namespace

Presentation reidemeister_schreier(const CosetTable& t) {
  const auto tree = spanning_tree(t);
  const auto edge_gen = free_edge_index(tree);
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  const auto& names = t.presentation().generator_names();
  std::vector<std::string> new_names;
  for (auto e : tree.free_edges) new_names.push_back(names[e % n] + "_" + std::to_string(e / n));
  std::vector<Word> relators;
  for (std::uint32_t c = 0; c < t.index(); ++c)
    for (const auto& r : t.presentation().relators()) relators.push_back(rewrite(t, edge_gen, c, r));
  return Presentation(std::move(new_names), std::move(relators));
}

std::vector<VectorFp> homomorphism_basis(const CosetTable& t, Residue p) {
  require_prime(p, "cosets");
  const auto tree = spanning_tree(t);
  const auto edge_gen = free_edge_index(tree);
  const std::size_t m = tree.free_edges.size();
  MatrixFp rel(p, 0, m);
  for (std::uint32_t c = 0; c < t.index(); ++c)
    for (const auto& r : t.presentation().relators()) {
      VectorFp row(m, 0);
      for (const auto& x : rewrite(t, edge_gen, c, r)) row[x.gen] = (row[x.gen] + (x.sign > 0 ? 1 : p - 1)) % p;
      rel.append_row(row);
    }
  return kernel_basis(rel);
}

CosetTable kernel_table(const CosetTable& t, Residue p, const VectorFp& hom) {
  const auto tree = spanning_tree(t);
  if (hom.size() != tree.free_edges.size()) throw InputError("cosets", "homomorphism has wrong length");
  if (std::all_of(hom.begin(), hom.end(), [](Residue v) { return v == 0; }))
    throw InputError("cosets", "kernel_table needs a nonzero homomorphism");
  const auto edge_gen = free_edge_index(tree);
  const auto n = static_cast<std::uint32_t>(t.generator_count());
  const auto index = static_cast<std::uint32_t>(t.index());
  std::vector<std::vector<std::uint32_t>> action(n, std::vector<std::uint32_t>(index * p));
  for (std::uint32_t c = 0; c < index; ++c)
    for (std::uint32_t s = 0; s < n; ++s) {
      const auto k = edge_gen[c * n + s];
      const Residue shift = k == kUndefined ? 0 : hom[k] % p;
      for (std::uint32_t level = 0; level < p; ++level)
        action[s][c * p + level] = t.perm(s)[c] * p + (level + shift) % p;
    }
  return CosetTable(t.presentation_ptr(), std::move(action)).standardized();
}

std::vector<CosetTable> index_p_normal_subgroups(const CosetTable& t, Residue p, std::uint64_t max_count) {
  const auto basis = homomorphism_basis(t, p);
  const std::size_t d = basis.size();
  std::vector<CosetTable> out;
  if (d == 0) return out;
  // (p^d − 1)/(p − 1) = 1 + p + … + p^{d−1}, checked term by term.
  std::uint64_t count = 0, term = 1;
  for (std::size_t i = 0; i < d; ++i) {
    count += term;
    if (count > max_count) {
      throw BudgetExceeded("cosets", "index-" + std::to_string(p) + " normal subgroups of an index-" +
                                         std::to_string(t.index()) + " subgroup exceed the budget of " +
                                         std::to_string(max_count) + " (d_p = " + std::to_string(d) + ")");
    }
    term *= p;
  }
  // Projective points of F_p^d: coefficient vectors whose first nonzero entry is 1.
  for (std::size_t lead = 0; lead < d; ++lead) {
    const std::size_t tail = d - lead - 1;
    const std::uint64_t combos = pow_u64(p, static_cast<unsigned>(tail));
    for (std::uint64_t code = 0; code < combos; ++code) {
      VectorFp hom = basis[lead];
      std::uint64_t rest = code;
      for (std::size_t i = lead + 1; i < d; ++i) {
        const auto coeff = static_cast<Residue>(rest % p);
        rest /= p;
        if (coeff != 0) hom = add_scaled(hom, basis[i], coeff, p);
      }
      out.push_back(kernel_table(t, p, hom));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms and subgroup relations

std::vector<std::uint32_t> canonical_form(const CosetTable& t) {
  const auto number = bfs_numbering(t);
  const auto n = t.generator_count();
  std::vector<std::uint32_t> form(t.index() * n);
  for (std::uint32_t c = 0; c < t.index(); ++c)
    for (std::uint32_t s = 0; s < n; ++s) form[number[c] * n + s] = number[t.perm(s)[c]];
  return form;
}

std::string canonical_key(const CosetTable& t, Residue p) {
  const auto form = canonical_form(t);
  const auto n = t.generator_count();
  std::string key = std::to_string(p) + "|" + std::to_string(t.index()) + "|";
  for (std::size_t c = 0; c < t.index(); ++c) {
    if (c > 0) key += ',';
    for (std::size_t s = 0; s < n; ++s) {
      if (s > 0) key += '.';
      key += std::to_string(form[c * n + s]);
    }
  }
  return key;
}

CosetTable table_from_canonical(std::shared_ptr<const Presentation> pres, const std::vector<std::uint32_t>& form) {
  const auto n = pres->generator_count();
  if (form.empty() || form.size() % n != 0) throw InputError("cosets", "canonical form has wrong length");
  const auto index = form.size() / n;
  std::vector<std::vector<std::uint32_t>> action(n, std::vector<std::uint32_t>(index));
  for (std::size_t c = 0; c < index; ++c)
    for (std::size_t s = 0; s < n; ++s) action[s][c] = form[c * n + s];
  return CosetTable(std::move(pres), std::move(action));
}

namespace {

void require_same_ambient(const CosetTable& a, const CosetTable& b) {
  if (a.presentation_ptr() != b.presentation_ptr() && !(a.presentation() == b.presentation()))
    throw InputError("cosets", "coset tables belong to different presentations");
}

}  // namespace

std::optional<std::vector<std::uint32_t>> coset_projection(const CosetTable& inner, const CosetTable& outer) {
  require_same_ambient(inner, outer);
  std::vector<std::uint32_t> map(inner.index(), kUndefined);
  map[0] = 0;
  std::vector<std::uint32_t> order{0};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto c = order[head];
    for (std::uint32_t s = 0; s < inner.generator_count(); ++s)
      for (std::int8_t sign : {std::int8_t{1}, std::int8_t{-1}}) {
        const auto d = inner.act(c, {s, sign});
        const auto image = outer.act(map[c], {s, sign});
        if (map[d] == kUndefined) {
          map[d] = image;
          order.push_back(d);
        } else if (map[d] != image) {
          return std::nullopt;
        }
      }
  }
  return map;
}

bool is_subgroup_of(const CosetTable& inner, const CosetTable& outer) {
  return coset_projection(inner, outer).has_value();
}

bool is_normal_in(const CosetTable& inner, const CosetTable& outer) {
  if (!is_subgroup_of(inner, outer)) return false;
  const auto outer_gens = schreier_generators(outer);
  const auto inner_gens = schreier_generators(inner);
  for (const auto& h : outer_gens) {
    const Word h_inv = inverse(h);
    for (const auto& g : inner_gens)
      if (!inner.contains(concat(concat(h, g), h_inv))) return false;
  }
  return true;
}

std::vector<std::uint32_t> deck_transformation(const CosetTable& t, const Word& h) {
  const auto tree = spanning_tree(t);
  const auto start = t.trace(0, h);
  std::vector<std::uint32_t> perm(t.index());
  for (std::uint32_t c = 0; c < t.index(); ++c) perm[c] = t.trace(start, tree.transversal[c]);
  return perm;
}

std::vector<std::uint64_t> SubnormalChain::step_indices() const {
  std::vector<std::uint64_t> steps;
  for (std::size_t i = 1; i < tables.size(); ++i) steps.push_back(tables[i].index() / tables[i - 1].index());
  return steps;
}

SubnormalChain::Validation SubnormalChain::validate() const {
  require_prime(p, "cosets");
  Validation v;
  for (std::size_t i = 1; i < tables.size(); ++i) {
    const auto& outer = tables[i - 1];
    const auto& inner = tables[i];
    if (!is_subgroup_of(inner, outer))
      throw InputError("cosets", "chain level " + std::to_string(i) + " is not contained in the previous level");
    std::uint64_t step = inner.index() / outer.index();
    if (step * outer.index() != inner.index()) throw InputError("cosets", "chain step index is not an integer");
    while (step > 1 && step % p == 0) step /= p;
    if (step != 1)
      throw InputError("cosets", "chain step " + std::to_string(i) + " does not have p-power index");
    if (!is_normal_in(inner, outer)) {
      if (i == 1) {
        v.first_step_normal = false;
        v.fully_subnormal = false;
      } else {
        throw InputError("cosets", "chain level " + std::to_string(i) + " is not normal in the previous level");
      }
    }
  }
  return v;
}

}  // namespace homgrowth
