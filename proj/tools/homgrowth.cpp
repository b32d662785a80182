// Command-line front end: builds subnormal chains and writes JSON reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "homgrowth/errors.hpp"
#include "homgrowth/lamplighter.hpp"
#include "homgrowth/report.hpp"

using namespace homgrowth;

namespace {

struct RunConfig {
  std::string presentation;
  unsigned prime = 2;
  unsigned cover_prime = 0;  // 0: same as prime
  std::size_t levels = 2;
  std::string strategy = "max-gradient-path";
  std::string chain_file;
  std::size_t budget_cosets = 4096;
  std::uint64_t budget_subsets = 1u << 22;
  std::uint64_t budget_cuts = 1u << 16;
  std::uint64_t budget_codewords = 1u << 22;
  std::size_t budget_subgroups = 20000;
  unsigned threads = 1;
  std::string out;
  std::string certificate;
  std::string export_prefix;

  Residue chain_prime() const { return cover_prime ? cover_prime : prime; }
};

void write_report(const RunConfig& config, const Json& j) {
  const auto text = j.dump(2) + "\n";
  if (config.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(config.out);
  if (!f) throw InputError("cli", "cannot write `" + config.out + "`");
  f << text;
}

Json header(const char* command, const RunConfig& config) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  if (!config.presentation.empty()) j["presentation_file"] = config.presentation;
  j["p"] = config.prime;
  return j;
}

std::shared_ptr<const Presentation> load(const RunConfig& config) {
  if (config.presentation.empty()) throw InputError("cli", "--presentation is required");
  return std::make_shared<const Presentation>(load_presentation(config.presentation));
}

// One subgroup per non-empty line, given by comma-separated generating words.
SubnormalChain explicit_chain(const RunConfig& config, std::shared_ptr<const Presentation> pres) {
  std::ifstream f(config.chain_file);
  if (!f) throw InputError("cli", "cannot open chain file `" + config.chain_file + "`");
  SubnormalChain chain{config.chain_prime(), {whole_group(pres)}};
  std::string line;
  while (std::getline(f, line)) {
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Word> gens;
    std::stringstream parts(line);
    for (std::string part; std::getline(parts, part, ',');) gens.push_back(parse_word(part, pres->generator_names()));
    chain.tables.push_back(todd_coxeter(pres, gens, config.budget_cosets));
  }
  chain.validate();
  return chain;
}

// --chain implies the explicit strategy; it cannot be combined with all-kernels.
std::string effective_strategy(const RunConfig& config) {
  if (config.chain_file.empty()) {
    if (config.strategy == "explicit") throw InputError("cli", "the explicit strategy needs --chain");
    return config.strategy;
  }
  if (config.strategy == "all-kernels") throw InputError("cli", "--chain cannot be combined with all-kernels");
  return "explicit";
}

SubnormalChain build_chain(const RunConfig& config, std::shared_ptr<const Presentation> pres) {
  const Residue p = config.chain_prime();
  const auto strategy = effective_strategy(config);
  if (strategy == "explicit") return explicit_chain(config, pres);
  if (strategy == "max-gradient-path") return greedy_gradient_chain(pres, p, config.levels, config.budget_cosets);
  if (strategy == "all-kernels") {
    GrowthOptions options{config.budget_cosets, config.budget_subgroups, config.threads};
    return max_gradient_chain(enumerate_subnormal(pres, p, config.levels, options));
  }
  throw InputError("cli", "unknown strategy `" + config.strategy + "`");
}

// Covers to search for certificates: every enumerated subgroup for
// all-kernels, otherwise the chain members.
std::vector<CosetTable> certify_covers(const RunConfig& config, std::shared_ptr<const Presentation> pres) {
  if (effective_strategy(config) == "all-kernels") {
    GrowthOptions options{config.budget_cosets, config.budget_subgroups, config.threads};
    std::vector<CosetTable> out;
    for (auto& node : enumerate_subnormal(pres, config.chain_prime(), config.levels, options).nodes)
      out.push_back(std::move(node.table));
    return out;
  }
  return build_chain(config, pres).tables;
}

int cmd_chain(const RunConfig& config) {
  auto pres = load(config);
  auto j = header("chain", config);
  j["strategy"] = effective_strategy(config);
  if (j["strategy"] == "all-kernels") {
    GrowthOptions options{config.budget_cosets, config.budget_subgroups, config.threads};
    const auto result = enumerate_subnormal(pres, config.chain_prime(), config.levels, options);
    j["growth"] = to_json(result);
    const auto chain = max_gradient_chain(result);
    j["chain"] = chain_json(chain);
    j["gradient"] = to_json(gradient(chain));
  } else {
    const auto chain = build_chain(config, pres);
    j["chain"] = chain_json(chain);
    j["gradient"] = to_json(gradient(chain));
  }
  write_report(config, j);
  return 0;
}

int cmd_certify(const RunConfig& config) {
  auto pres = load(config);
  const Residue p = config.prime;
  require_prime(p, "cli");
  auto j = header("certify", config);
  j["cover_prime"] = config.chain_prime();
  j["strategy"] = effective_strategy(config);
  SweepOptions options;
  options.max_connected_sets = config.budget_subsets;
  options.exhaustive_limit = config.budget_cuts;
  options.threads = config.threads;
  Json covers = Json::array();
  std::optional<LargenessCertificate> found;
  for (const auto& t : certify_covers(config, pres)) {
    auto report = sweep_cover(t, p, options);
    Json row = to_json(report);
    row["index"] = t.index();
    row["canonical_key"] = canonical_key(t, config.chain_prime());
    covers.push_back(row);
    if (report.certificate) {
      verify_certificate(*report.certificate);
      found = std::move(report.certificate);
      break;
    }
  }
  j["covers"] = covers;
  j["status"] = found ? "certified" : "no certificate";
  if (found) j["certificate"] = to_json(*found);
  write_report(config, j);
  return 0;
}

int cmd_verify(const RunConfig& config) {
  if (config.certificate.empty()) throw InputError("cli", "--certificate is required");
  std::ifstream f(config.certificate);
  if (!f) throw InputError("cli", "cannot open `" + config.certificate + "`");
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cli", std::string("certificate is not JSON: ") + e.what());
  }
  // Accept either a bare certificate or a certify report carrying one.
  const Json& body = j.contains("certificate") ? j["certificate"] : j;
  const auto cert = certificate_from_json(body);
  verify_certificate(cert);
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = "verify";
  out["status"] = "verified";
  out["p"] = cert.p;
  out["cover_index"] = cert.cover.index();
  out["cocycles"] = cert.cocycles.size();
  write_report(config, out);
  return 0;
}

int cmd_codes(const RunConfig& config) {
  auto pres = load(config);
  const Residue p = config.prime;
  require_prime(p, "cli");
  const auto chain = build_chain(config, pres);
  GoodnessOptions options;
  options.distance_budget = config.budget_codewords;
  const auto ledger = goodness_ledger(chain.tables, p, options);
  auto j = header("codes", config);
  j["cover_prime"] = config.chain_prime();
  j["ledger"] = to_json(ledger);
  if (!config.export_prefix.empty()) {
    for (std::size_t i = 0; i < chain.tables.size(); ++i) {
      const auto path = config.export_prefix + "_" + std::to_string(i) + ".txt";
      std::ofstream f(path);
      if (!f) throw InputError("cli", "cannot write `" + path + "`");
      write_code(f, code_from_cover(covering_complex(chain.tables[i]), p));
    }
  }
  write_report(config, j);
  return 0;
}

int cmd_tau(const RunConfig& config) {
  auto pres = load(config);
  const auto chain = build_chain(config, pres);
  auto j = header("tau", config);
  j["tau"] = to_json(tau_diagnostics(chain, 24, config.budget_subsets, config.threads));
  write_report(config, j);
  return 0;
}

int cmd_growth(const RunConfig& config) {
  auto pres = load(config);
  GrowthOptions options{config.budget_cosets, config.budget_subgroups, config.threads};
  const auto result = enumerate_subnormal(pres, config.prime, config.levels, options);
  auto j = header("growth", config);
  j["growth"] = to_json(result);
  if (result.ledger.levels.size() >= 2) {
    const auto chain = max_gradient_chain(result);
    const auto g = gradient(chain);
    j["max_gradient_chain"] = to_json(g);
    j["diagnostics"] = to_json(growth_diagnostics(result.ledger, g.infimum.back()));
  }
  write_report(config, j);
  return 0;
}

int cmd_lamplighter(const RunConfig& config) {
  const Residue p = config.prime;
  require_prime(p, "cli");
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = "lamplighter";
  j["p"] = p;
  Json levels = Json::array();
  std::mt19937_64 rng(1);
  for (unsigned i = 0; i <= config.levels; ++i) {
    const auto m = pow_u64(p, i);
    Json row;
    row["level"] = i;
    row["index"] = m;
    row["dp_lower_bound"] = dp_lower_bound(i, p);
    // Homomorphism check on random pairs of G_i elements.
    std::uniform_int_distribution<std::int64_t> shift(-4, 4), position(-20, 20);
    std::uniform_int_distribution<Residue> value(1, p - 1);
    std::size_t failures = 0;
    const std::size_t pairs = 1000;
    for (std::size_t t = 0; t < pairs; ++t) {
      LamplighterElement x{shift(rng) * static_cast<std::int64_t>(m), {}}, y{shift(rng) * static_cast<std::int64_t>(m), {}};
      for (int s = 0; s < 4; ++s) {
        x.lamps[position(rng)] = value(rng);
        y.lamps[position(rng)] = value(rng);
      }
      const auto xy = multiply(x, y, p);
      for (std::uint64_t jj = 0; jj < m; ++jj)
        if (phi_j(xy, i, jj, p) != (phi_j(x, i, jj, p) + phi_j(y, i, jj, p)) % p) ++failures;
    }
    row["homomorphism_pairs"] = pairs;
    row["homomorphism_failures"] = failures;
    // Schreier graph of the quotient onto Z/pⁱ: a shifts, b fixes.
    if (m >= 2 && m <= 64) {
      SchreierGraph x{m, {}};
      for (std::uint32_t c = 0; c < m; ++c) {
        x.edges.push_back({c, static_cast<std::uint32_t>((c + 1) % m), 0});
        x.edges.push_back({c, c, 1});
      }
      row["quotient_cheeger"] = to_json(cheeger(x, 24, config.budget_subsets, config.threads));
    }
    levels.push_back(row);
  }
  j["levels"] = levels;
  write_report(config, j);
  return 0;
}

void add_common(CLI::App* app, RunConfig& config, bool presentation = true) {
  if (presentation) app->add_option("--presentation", config.presentation, "presentation file")->required();
  app->add_option("--prime", config.prime, "prime p")->check(CLI::PositiveNumber);
  app->add_option("--levels", config.levels, "number of index-p steps");
  app->add_option("--threads", config.threads, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--out", config.out, "write the JSON report here instead of stdout");
}

void add_chain_options(CLI::App* app, RunConfig& config) {
  app->add_option("--strategy", config.strategy, "all-kernels | max-gradient-path | explicit")
      ->check(CLI::IsMember({"all-kernels", "max-gradient-path", "explicit"}));
  app->add_option("--chain", config.chain_file, "explicit chain file: one subgroup per line, words comma-separated");
  app->add_option("--cover-prime", config.cover_prime, "prime of the chain steps (default: --prime)");
  app->add_option("--budget-cosets", config.budget_cosets, "largest cover index")->check(CLI::PositiveNumber);
  app->add_option("--budget-subgroups", config.budget_subgroups, "most subgroups kept by all-kernels enumeration")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subnormal p-power chains, Cheeger and homology diagnostics, largeness certificates"};
  app.require_subcommand(1);
  RunConfig config;

  auto* chain = app.add_subcommand("chain", "build and validate a subnormal chain");
  add_common(chain, config);
  add_chain_options(chain, config);

  auto* certify = app.add_subcommand("certify", "search covers for a largeness certificate");
  add_common(certify, config);
  add_chain_options(certify, config);
  certify->add_option("--budget-subsets", config.budget_subsets, "connected subsets in exact Cheeger search")
      ->check(CLI::PositiveNumber);
  certify->add_option("--budget-cuts", config.budget_cuts, "try every cut when 2^(|V|-1) is at most this")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "re-check a stored certificate from scratch");
  verify->add_option("--certificate", config.certificate, "certificate or certify report")->required();
  verify->add_option("--out", config.out, "write the JSON report here instead of stdout");

  auto* codes = app.add_subcommand("codes", "linear codes from the cohomology of covers");
  add_common(codes, config);
  add_chain_options(codes, config);
  codes->add_option("--budget-codewords", config.budget_codewords, "exact distance when p^k is at most this")
      ->check(CLI::PositiveNumber);
  codes->add_option("--export", config.export_prefix, "write generator matrices to PREFIX_<level>.txt");

  auto* tau = app.add_subcommand("tau", "Cheeger constants and homology gradient along a chain");
  add_common(tau, config);
  add_chain_options(tau, config);
  tau->add_option("--budget-subsets", config.budget_subsets, "connected subsets in exact Cheeger search")
      ->check(CLI::PositiveNumber);

  auto* growth = app.add_subcommand("growth", "count subnormal p-power subgroups level by level");
  add_common(growth, config);
  growth->add_option("--budget-cosets", config.budget_cosets, "largest index")->check(CLI::PositiveNumber);
  growth->add_option("--budget-subgroups", config.budget_subgroups, "most subgroups kept")->check(CLI::PositiveNumber);

  auto* lamplighter = app.add_subcommand("lamplighter", "d_p lower bounds for Z/p wr Z");
  add_common(lamplighter, config, false);
  lamplighter->add_option("--budget-subsets", config.budget_subsets, "connected subsets in exact Cheeger search")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*chain) return cmd_chain(config);
    if (*certify) return cmd_certify(config);
    if (*verify) return cmd_verify(config);
    if (*codes) return cmd_codes(config);
    if (*tau) return cmd_tau(config);
    if (*growth) return cmd_growth(config);
    if (*lamplighter) return cmd_lamplighter(config);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded [" << e.module() << "]: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error [" << e.module() << "]: " << e.what() << "\n";
    return 3;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure [" << e.module() << "]: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
