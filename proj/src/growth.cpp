#include "homgrowth/growth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "homgrowth/errors.hpp"

namespace homgrowth {

namespace {

// p^e as a 64-bit value, or nullopt on overflow.
std::optional<std::uint64_t> checked_power(std::uint64_t p, std::uint64_t e) {
  std::uint64_t value = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (value > UINT64_MAX / p) return std::nullopt;
    value *= p;
  }
  return value;
}

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return std::nullopt;
  return a * b;
}

Rational gradient_of(std::size_t dp, std::uint64_t index) {
  return Rational(static_cast<std::int64_t>(dp) - 1, static_cast<std::int64_t>(index));
}

}  // namespace

bool GrowthLedger::count_inequality_holds() const {
  for (std::size_t n = 1; n < levels.size(); ++n) {
    const auto& prev = levels[n - 1];
    const auto power = checked_power(p, prev.r);
    const auto bound = power ? checked_mul(prev.count, *power) : std::nullopt;
    if (bound) {
      if (levels[n].count > *bound) return false;
    } else if (std::log(static_cast<double>(levels[n].count)) >
               std::log(static_cast<double>(prev.count)) + static_cast<double>(prev.r) * std::log(double(p)) + 1e-9) {
      return false;
    }
  }
  return true;
}

bool GrowthLedger::homology_bound_holds() const {
  for (const auto& l : levels) {
    const auto lhs = static_cast<std::int64_t>(l.r) - 1;
    const auto rhs = static_cast<std::int64_t>(l.index) * (static_cast<std::int64_t>(d_p) - 1);
    if (lhs > rhs) return false;
  }
  return true;
}

std::optional<std::uint64_t> GrowthLedger::expected_level_one() const {
  const auto power = checked_power(p, d_p);
  if (!power) return std::nullopt;
  return (*power - 1) / (p - 1);
}

std::vector<std::uint32_t> GrowthResult::level_nodes(std::size_t level) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].level == level) out.push_back(i);
  return out;
}

GrowthResult enumerate_subnormal(std::shared_ptr<const Presentation> pres, Residue p, std::size_t max_level,
                                 const GrowthOptions& options) {
  require_prime(p, "growth");
  GrowthResult result;
  auto& ledger = result.ledger;
  ledger.p = p;

  auto g = whole_group(pres);
  const auto d0 = homomorphism_basis(g, p).size();
  ledger.d_p = d0;
  result.nodes.push_back({0, canonical_key(g, p), g, d0, {}});
  ledger.levels.push_back({0, 1, 1, d0});

  std::vector<std::uint32_t> frontier{0};
  const unsigned threads = std::max(1u, options.threads);
  for (std::size_t level = 1; level <= max_level; ++level) {
    const std::uint64_t index = result.nodes[frontier.front()].table.index() * p;
    if (index > options.max_cosets) {
      ledger.truncated = true;
      ledger.truncation_note = "level " + std::to_string(level) + " needs index " + std::to_string(index) +
                               " above the coset budget " + std::to_string(options.max_cosets);
      break;
    }
    // Expanding a node yields (p^d − 1)/(p − 1) children before dedup.
    std::uint64_t raw = 0;
    for (auto id : frontier) {
      const auto power = checked_power(p, result.nodes[id].dp);
      raw += power ? (*power - 1) / (p - 1) : UINT64_MAX / 2;
    }
    if (raw + result.nodes.size() > options.max_subgroups) {
      ledger.truncated = true;
      ledger.truncation_note = "level " + std::to_string(level) + " would produce up to " + std::to_string(raw) +
                               " subgroups, above the subgroup budget " + std::to_string(options.max_subgroups);
      break;
    }

    // Children of each parent in parallel; the merge below runs in parent
    // order so the numbering does not depend on the thread count.
    std::vector<std::vector<std::pair<std::string, CosetTable>>> children(frontier.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned id) {
      try {
        for (std::size_t i = next++; i < frontier.size(); i = next++)
          for (auto& t : index_p_normal_subgroups(result.nodes[frontier[i]].table, p, options.max_subgroups)) {
            auto key = canonical_key(t, p);
            children[i].emplace_back(std::move(key), std::move(t));
          }
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

    std::map<std::string, std::uint32_t> seen;
    std::vector<std::uint32_t> next_frontier;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& [key, table] : children[i]) {
        auto [it, fresh] = seen.emplace(key, static_cast<std::uint32_t>(result.nodes.size()));
        if (fresh) {
          result.nodes.push_back({level, key, std::move(table), 0, {frontier[i]}});
          next_frontier.push_back(it->second);
        } else {
          auto& parents = result.nodes[it->second].parents;
          if (std::find(parents.begin(), parents.end(), frontier[i]) == parents.end()) parents.push_back(frontier[i]);
        }
      }
    }

    next = 0;
    auto rank_work = [&](unsigned id) {
      try {
        for (std::size_t i = next++; i < next_frontier.size(); i = next++) {
          auto& node = result.nodes[next_frontier[i]];
          node.dp = homomorphism_basis(node.table, p).size();
        }
      } catch (...) {
        errors[id] = std::current_exception();
      }
    };
    if (threads == 1) {
      rank_work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned id = 0; id < threads; ++id) pool.emplace_back(rank_work, id);
      for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);

    GrowthLevel stats{level, index, next_frontier.size(), 0};
    for (auto id : next_frontier) {
      const auto& node = result.nodes[id];
      stats.r = std::max(stats.r, node.dp);
      if (static_cast<std::int64_t>(node.dp) - 1 >
          static_cast<std::int64_t>(index) * (static_cast<std::int64_t>(d0) - 1))
        ++result.subnormal_bound_violations;
      for (auto parent : node.parents) {
        const auto& up = result.nodes[parent];
        if (gradient_of(node.dp, index) > gradient_of(up.dp, up.table.index())) ++result.gradient_violations;
      }
    }
    ledger.levels.push_back(stats);
    frontier = std::move(next_frontier);
    if (frontier.empty()) break;
  }
  return result;
}

SubnormalChain max_gradient_chain(const GrowthResult& result) {
  if (result.nodes.empty()) throw InputError("growth", "empty enumeration");
  const std::size_t deepest = result.nodes.back().level;
  std::uint32_t best = UINT32_MAX;
  for (auto id : result.level_nodes(deepest)) {
    const auto& node = result.nodes[id];
    if (best == UINT32_MAX ||
        gradient_of(node.dp, node.table.index()) >
            gradient_of(result.nodes[best].dp, result.nodes[best].table.index()))
      best = id;
  }
  std::vector<CosetTable> tables;
  for (std::uint32_t id = best;;) {
    tables.push_back(result.nodes[id].table);
    if (result.nodes[id].parents.empty()) break;
    id = result.nodes[id].parents.front();
  }
  std::reverse(tables.begin(), tables.end());
  return SubnormalChain{result.ledger.p, std::move(tables)};
}

SubnormalChain greedy_gradient_chain(std::shared_ptr<const Presentation> pres, Residue p, std::size_t levels,
                                     std::size_t max_cosets) {
  require_prime(p, "growth");
  SubnormalChain chain{p, {whole_group(pres)}};
  for (std::size_t level = 1; level <= levels; ++level) {
    if (chain.tables.back().index() * p > max_cosets) break;
    std::optional<CosetTable> best;
    std::size_t best_dp = 0;
    for (auto& t : index_p_normal_subgroups(chain.tables.back(), p)) {
      const auto d = homomorphism_basis(t, p).size();
      if (!best || d > best_dp) {
        best_dp = d;
        best = std::move(t);
      }
    }
    if (!best) break;
    chain.tables.push_back(std::move(*best));
  }
  return chain;
}

GradientReport gradient(const SubnormalChain& chain) {
  chain.validate();
  GradientReport report;
  for (const auto& t : chain.tables) {
    const auto d = homomorphism_basis(t, chain.p).size();
    report.dp.push_back(d);
    report.index.push_back(t.index());
    report.gradient.push_back(gradient_of(d, t.index()));
    report.normalized.push_back(Rational(static_cast<std::int64_t>(d), static_cast<std::int64_t>(t.index())));
    const auto& g = report.gradient.back();
    report.infimum.push_back(report.infimum.empty() ? g : std::min(report.infimum.back(), g));
    if (report.gradient.size() >= 2 && g > report.gradient[report.gradient.size() - 2]) report.non_increasing = false;
  }
  return report;
}

GrowthDiagnostics growth_diagnostics(const GrowthLedger& ledger, std::optional<Rational> lambda) {
  if (ledger.levels.size() < 2) throw InputError("growth", "growth diagnostics need at least two levels");
  GrowthDiagnostics out;
  out.p = ledger.p;
  out.lambda = lambda;
  const double log_p = std::log(static_cast<double>(ledger.p));
  std::uint64_t rank_sum = 0;
  for (const auto& l : ledger.levels) {
    const double scale = static_cast<double>(l.index);
    const double log_count = std::log(static_cast<double>(l.count));
    out.log_count_ratio.push_back(log_count / scale);
    out.rank_sum_ratio.push_back(static_cast<double>(rank_sum) / scale);
    if (log_count > log_p * static_cast<double>(rank_sum) + 1e-9) out.upper_bound_holds = false;
    rank_sum += l.r;
  }
  if (lambda) {
    if (*lambda < Rational(0)) throw InputError("growth", "gradient must be non-negative");
    for (std::size_t n = 1; n < ledger.levels.size(); ++n) {
      CountBound b;
      b.level = n;
      const Rational scaled = *lambda * Rational(static_cast<std::int64_t>(ledger.levels[n - 1].index));
      b.exponent = static_cast<std::uint64_t>(scaled.num / scaled.den) + 1;
      const auto power = checked_power(ledger.p, b.exponent);
      if (power) b.value = (*power - 1) / (ledger.p - 1);
      b.log_value = b.value ? std::log(static_cast<double>(*b.value))
                            : static_cast<double>(b.exponent) * log_p - std::log(static_cast<double>(ledger.p - 1));
      const auto count = ledger.levels[n].count;
      b.holds = b.value ? *b.value <= count : b.log_value <= std::log(static_cast<double>(count)) + 1e-9;
      out.lower_bounds.push_back(b);
    }
  }
  return out;
}

}  // namespace homgrowth
