#include "homgrowth/words.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "homgrowth/errors.hpp"

namespace homgrowth {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& x : w) {
    if (!out.empty() && out.back().gen == x.gen && out.back().sign == -x.sign)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo].gen == r[hi - 1].gen && r[lo].sign == -r[hi - 1].sign) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(Letter x, int exponent) {
  if (exponent < 0) {
    x = x.inverse();
    exponent = -exponent;
  }
  return Word(static_cast<std::size_t>(exponent), x);
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& x : w) {
    if (!out.empty()) out += ' ';
    out += x.gen < names.size() ? names[x.gen] : "g" + std::to_string(x.gen);
    if (x.sign < 0) out += "^-1";
  }
  return out;
}

Presentation::Presentation(std::vector<std::string> generator_names, std::vector<Word> relators)
    : names_(std::move(generator_names)) {
  if (names_.empty()) throw InputError("words", "a presentation needs at least one generator");
  for (auto& r : relators) {
    for (const auto& x : r)
      if (x.gen >= names_.size() || (x.sign != 1 && x.sign != -1))
        throw InputError("words", "relator letter out of range");
    Word reduced = cyclic_reduce(r);
    if (reduced.empty()) continue;
    total_length_ += reduced.size();
    relators_.push_back(std::move(reduced));
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

InputError line_error(std::size_t line, const std::string& msg) {
  return InputError("words", "line " + std::to_string(line) + ": " + msg);
}

// Whitespace-separated `name` or `name^k` tokens; throws invalid_argument
// with a message for the caller to wrap.
Word parse_tokens(std::string_view text, const std::map<std::string, std::uint32_t, std::less<>>& index) {
  std::istringstream body{std::string(text)};
  std::string token;
  Word w;
  while (body >> token) {
    const auto caret = token.find('^');
    const std::string name = token.substr(0, caret);
    int exponent = 1;
    if (caret != std::string::npos) {
      const std::string exp = token.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), exponent);
      if (ec != std::errc() || ptr != exp.data() + exp.size() || exponent == 0)
        throw std::invalid_argument("bad exponent in `" + token + "`");
    }
    auto it = index.find(name);
    if (it == index.end()) throw std::invalid_argument("unknown generator `" + name + "`");
    const Word chunk = power(Letter{it->second, 1}, exponent);
    w.insert(w.end(), chunk.begin(), chunk.end());
  }
  return w;
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  std::map<std::string, std::uint32_t, std::less<>> index;
  for (std::uint32_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  try {
    return free_reduce(parse_tokens(text, index));
  } catch (const std::invalid_argument& e) {
    throw InputError("words", e.what());
  }
}

Presentation parse_presentation(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, std::uint32_t, std::less<>> index;
  std::vector<Word> relators;
  bool have_generators = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw line_error(line_no, "expected `generators:` or `rel:`");
    const std::string key = trim(std::string_view(line).substr(0, colon));
    std::istringstream body(line.substr(colon + 1));
    std::string token;
    if (key == "generators") {
      if (have_generators) throw line_error(line_no, "duplicate generators line");
      have_generators = true;
      while (body >> token) {
        if (!valid_name(token)) throw line_error(line_no, "invalid generator name `" + token + "`");
        if (index.contains(token)) throw line_error(line_no, "duplicate generator `" + token + "`");
        index.emplace(token, static_cast<std::uint32_t>(names.size()));
        names.push_back(token);
      }
      if (names.empty()) throw line_error(line_no, "no generators listed");
    } else if (key == "rel") {
      if (!have_generators) throw line_error(line_no, "`rel:` before `generators:`");
      std::string rest;
      std::getline(body, rest);
      Word w;
      try {
        w = parse_tokens(rest, index);
      } catch (const std::invalid_argument& e) {
        throw line_error(line_no, e.what());
      }
      if (w.empty()) throw line_error(line_no, "empty relator");
      relators.push_back(std::move(w));
    } else {
      throw line_error(line_no, "unknown key `" + key + "`");
    }
  }
  if (!have_generators) throw InputError("words", "missing `generators:` line");
  return Presentation(std::move(names), std::move(relators));
}

Presentation load_presentation(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("words", "cannot open presentation file `" + path + "`");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

std::string format_presentation(const Presentation& pres) {
  std::string out = "generators:";
  for (const auto& n : pres.generator_names()) out += " " + n;
  out += "\n";
  for (const auto& r : pres.relators()) out += "rel: " + word_to_string(r, pres.generator_names()) + "\n";
  return out;
}

MatrixFp abelianized_mod_p(const Presentation& pres, Residue p) {
  require_prime(p, "words");
  MatrixFp m(p, pres.relators().size(), pres.generator_count());
  for (std::size_t r = 0; r < pres.relators().size(); ++r)
    for (const auto& x : pres.relators()[r]) m.add(r, x.gen, x.sign);
  return m;
}

std::size_t dp(const Presentation& pres, Residue p) {
  return pres.generator_count() - rank(abelianized_mod_p(pres, p));
}

std::vector<std::uint32_t> homology_basis_labels(const Presentation& pres, Residue p) {
  const MatrixFp rel = abelianized_mod_p(pres, p);
  SpanBuilder span(p, pres.generator_count());
  for (std::size_t r = 0; r < rel.rows(); ++r) span.add(rel.row(r));
  std::vector<std::uint32_t> labels;
  for (std::uint32_t g = 0; g < pres.generator_count(); ++g) {
    VectorFp e(pres.generator_count(), 0);
    e[g] = 1;
    if (span.add(e)) labels.push_back(g);
  }
  return labels;
}

bool is_homology_basis(const Presentation& pres, Residue p, const std::vector<std::uint32_t>& labels) {
  if (labels.size() != dp(pres, p)) return false;
  const MatrixFp rel = abelianized_mod_p(pres, p);
  SpanBuilder span(p, pres.generator_count());
  for (std::size_t r = 0; r < rel.rows(); ++r) span.add(rel.row(r));
  for (auto g : labels) {
    if (g >= pres.generator_count()) return false;
    VectorFp e(pres.generator_count(), 0);
    e[g] = 1;
    if (!span.add(e)) return false;
  }
  return true;
}

std::uint32_t FiniteQuotientSpec::act(std::uint32_t point, Letter x) const {
  const auto& img = images[x.gen];
  if (x.sign > 0) return img[point];
  return static_cast<std::uint32_t>(std::find(img.begin(), img.end(), point) - img.begin());
}

void FiniteQuotientSpec::validate(const Presentation& pres) const {
  if (degree == 0) throw InputError("words", "quotient degree must be positive");
  if (images.size() != pres.generator_count())
    throw InputError("words", "quotient spec needs one permutation per generator");
  for (const auto& img : images) {
    if (img.size() != degree) throw InputError("words", "permutation has wrong degree");
    std::vector<bool> seen(degree, false);
    for (auto v : img) {
      if (v >= degree || seen[v]) throw InputError("words", "image is not a bijection");
      seen[v] = true;
    }
  }
  for (const auto& r : pres.relators())
    for (std::uint32_t start = 0; start < degree; ++start) {
      std::uint32_t pt = start;
      for (const auto& x : r) pt = act(pt, x);
      if (pt != start) throw InputError("words", "relator does not act trivially: invalid quotient spec");
    }
}

}  // namespace homgrowth
