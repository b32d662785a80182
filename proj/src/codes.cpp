#include "homgrowth/codes.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "homgrowth/cocycles.hpp"
#include "homgrowth/errors.hpp"

namespace homgrowth {

namespace {

std::optional<std::uint64_t> power_within(std::uint64_t p, std::size_t k, std::uint64_t budget) {
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (value > budget / p) return std::nullopt;
    value *= p;
  }
  return value;
}

VectorFp combine(const std::vector<VectorFp>& rows, const VectorFp& coeffs, Residue p, std::size_t n) {
  VectorFp out(n, 0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (coeffs[i] != 0) out = add_scaled(out, rows[i], coeffs[i], p);
  return out;
}

}  // namespace

Rational LinearCode::rate() const {
  if (length() == 0) throw InputError("codes", "code of length 0 has no rate");
  return Rational(static_cast<std::int64_t>(dimension()), static_cast<std::int64_t>(length()));
}

LinearCode code_from_cover(const TwoComplex& k, Residue p) {
  require_prime(p, "codes");
  return {p, MatrixFp::from_vectors(p, k.one_cell_count(), cohomology_basis(k, p))};
}

CodeDistance code_distance(const LinearCode& code, std::uint64_t budget, std::size_t samples, std::uint64_t seed) {
  const Residue p = code.p;
  const std::size_t k = code.dimension();
  const std::size_t n = code.length();
  if (k == 0) return {0, true};

  if (const auto total = power_within(p, k, budget)) {
    // Odometer over coefficient vectors. Moving digit i from p−1 back to 0 is
    // also one more addition of row i, so every step adds whole rows and the
    // weight can be updated over the row support only.
    std::vector<std::vector<std::uint32_t>> support(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (code.generator.at(i, j) != 0) support[i].push_back(j);
    VectorFp word(n, 0);
    VectorFp digits(k, 0);
    std::size_t weight = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t step = 1; step < *total; ++step) {
      for (std::size_t i = 0; i < k; ++i) {
        for (auto j : support[i]) {
          const Residue before = word[j];
          word[j] = (before + code.generator.at(i, j)) % p;
          weight += (word[j] != 0) - (before != 0);
        }
        digits[i] = (digits[i] + 1) % p;
        if (digits[i] != 0) break;
      }
      best = std::min(best, weight);
    }
    return {best, true};
  }

  std::vector<VectorFp> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back(code.generator.row_vector(i));
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& r : rows) best = std::min(best, hamming_weight(r));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (Residue b = 1; b < p; ++b) best = std::min(best, hamming_weight(add_scaled(rows[i], rows[j], b, p)));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Residue> digit(0, p - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    VectorFp coeffs(k);
    for (auto& c : coeffs) c = digit(rng);
    if (std::all_of(coeffs.begin(), coeffs.end(), [](Residue c) { return c == 0; })) continue;
    best = std::min(best, hamming_weight(combine(rows, coeffs, p, n)));
  }
  return {best, false};
}

void write_code(std::ostream& os, const LinearCode& code) {
  os << code.p << ' ' << code.dimension() << ' ' << code.length() << '\n';
  for (std::size_t i = 0; i < code.dimension(); ++i) {
    for (std::size_t j = 0; j < code.length(); ++j) {
      if (code.p > 10 && j > 0) os << ' ';
      os << code.generator.at(i, j);
    }
    os << '\n';
  }
}

std::string code_to_text(const LinearCode& code) {
  std::ostringstream os;
  write_code(os, code);
  return os.str();
}

LinearCode read_code(std::istream& is) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw InputError("codes", "missing `p k n` header");
  std::istringstream header(line);
  std::int64_t p = 0, k = 0, n = 0;
  std::string extra;
  if (!(header >> p >> k >> n) || (header >> extra) || k < 0 || n < 0)
    throw InputError("codes", "malformed header: " + line);
  require_prime(static_cast<std::uint64_t>(p), "codes");
  const auto prime = static_cast<Residue>(p);
  MatrixFp m(prime, 0, static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < k; ++r) {
    if (!next_line()) throw InputError("codes", "expected " + std::to_string(k) + " rows");
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    VectorFp row;
    if (parts.size() == 1 && static_cast<std::int64_t>(parts[0].size()) == n && prime <= 10) {
      for (char c : parts[0]) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("codes", "bad digit in row: " + line);
        row.push_back(static_cast<Residue>(c - '0'));
      }
    } else {
      for (const auto& t : parts) {
        std::size_t used = 0;
        long long v = 0;
        try {
          v = std::stoll(t, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != t.size() || v < 0) throw InputError("codes", "bad entry in row: " + line);
        row.push_back(static_cast<Residue>(v));
      }
    }
    if (static_cast<std::int64_t>(row.size()) != n) throw InputError("codes", "row has wrong length: " + line);
    for (auto v : row)
      if (v >= prime) throw InputError("codes", "entry out of range for p: " + line);
    m.append_row(row);
  }
  if (next_line()) throw InputError("codes", "trailing content after the rows");
  if (rank(m) != static_cast<std::size_t>(k)) throw InputError("codes", "generator rows are linearly dependent");
  return {prime, m};
}

LinearCode code_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_code(is);
}

ClassMinimum min_relative_size(const TwoComplex& k, Residue p, std::uint64_t class_budget, std::uint64_t shift_budget,
                               std::size_t samples, std::uint64_t seed) {
  require_prime(p, "codes");
  const auto basis = cohomology_basis(k, p);
  const std::size_t dim = basis.size();
  const std::size_t n = k.one_cell_count();
  ClassMinimum out;
  if (dim == 0) throw InputError("codes", "H^1 is zero, so there is no nonzero class");
  std::optional<Rational> best;
  bool all_exact = true;
  auto visit = [&](const VectorFp& coeffs) {
    const auto rs = relative_size(k, Cochain1{p, combine(basis, coeffs, p, n)}, shift_budget);
    ++out.classes_tried;
    all_exact = all_exact && rs.exact;
    if (!best || rs.value < *best) best = rs.value;
  };

  if (const auto total = power_within(p, dim, class_budget)) {
    // Relative size is unchanged by nonzero scalars, so visit one class per
    // line: first nonzero coefficient equal to 1.
    VectorFp coeffs(dim, 0);
    for (std::uint64_t step = 1; step < *total; ++step) {
      for (std::size_t i = 0; i < dim; ++i) {
        coeffs[i] = (coeffs[i] + 1) % p;
        if (coeffs[i] != 0) break;
      }
      const auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](Residue c) { return c != 0; });
      if (*lead == 1) visit(coeffs);
    }
    out.exact = all_exact;
  } else {
    for (std::size_t i = 0; i < dim; ++i) {
      VectorFp coeffs(dim, 0);
      coeffs[i] = 1;
      visit(coeffs);
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Residue> digit(0, p - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      VectorFp coeffs(dim);
      for (auto& c : coeffs) c = digit(rng);
      if (std::all_of(coeffs.begin(), coeffs.end(), [](Residue c) { return c == 0; })) continue;
      visit(coeffs);
    }
    out.exact = false;
  }
  out.value = *best;
  return out;
}

GoodnessLedger goodness_ledger(const std::vector<CosetTable>& covers, Residue p, const GoodnessOptions& options,
                               std::optional<bool> largeness_found) {
  require_prime(p, "codes");
  GoodnessLedger ledger;
  ledger.p = p;
  for (const auto& t : covers) {
    if (!(t.presentation() == covers.front().presentation()))
      throw InputError("codes", "covers do not share a base presentation");
    const auto k = covering_complex(t);
    const auto code = code_from_cover(k, p);
    GoodnessRow row;
    row.index = t.index();
    row.n = code.length();
    row.k = code.dimension();
    row.distance = code_distance(code, options.distance_budget, 4096, options.seed);
    row.rate = code.rate();
    row.relative_distance = Rational(static_cast<std::int64_t>(row.distance.value), static_cast<std::int64_t>(row.n));
    if (row.k > 0)
      row.class_minimum =
          min_relative_size(k, p, options.class_budget, options.shift_budget, options.samples, options.seed);
    ledger.rows.push_back(row);
  }

  if (ledger.rows.size() < 2) {
    ledger.hypothesis = "too few covers to judge homology growth";
  } else {
    auto normalized = [](const GoodnessRow& r) {
      return Rational(static_cast<std::int64_t>(r.k), static_cast<std::int64_t>(r.index));
    };
    bool non_increasing = true;
    for (std::size_t i = 1; i < ledger.rows.size(); ++i)
      if (normalized(ledger.rows[i]) > normalized(ledger.rows[i - 1])) non_increasing = false;
    const auto first = normalized(ledger.rows.front());
    const auto last = normalized(ledger.rows.back());
    ledger.hypothesis = non_increasing && last * Rational(2) <= first
                            ? "hypothesis not met: d_p/index decreasing toward 0 on computed covers"
                            : "hypothesis holds on computed covers: d_p/index bounded below so far";
  }
  if (largeness_found) {
    ledger.dichotomy = *largeness_found
                           ? "largeness certificate found; no goodness claim needed"
                           : "no largeness certificate found; under linear homology growth the codes of a nested "
                             "subnormal family are asymptotically good";
  }
  return ledger;
}

}  // namespace homgrowth
