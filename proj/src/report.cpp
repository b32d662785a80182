#include "homgrowth/report.hpp"

#include "homgrowth/errors.hpp"

namespace homgrowth {

namespace {

Json signed_cells(const std::vector<SignedCell>& path) {
  Json out = Json::array();
  for (const auto& x : path) out.push_back({x.cell, x.sign});
  return out;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}}; }

Rational rational_from_json(const Json& j) { return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

Json to_json(const CosetTable& t, Residue p) {
  Json action = Json::array();
  for (std::uint32_t s = 0; s < t.generator_count(); ++s) action.push_back(t.perm(s));
  return {{"index", t.index()}, {"canonical_key", canonical_key(t, p)}, {"action", action}};
}

Json to_json(const RegularModPCocycle& g) {
  Json edges = Json::array();
  for (const auto& ev : g.edge_vertices) edges.push_back({ev.cell, ev.weight});
  Json arcs = Json::array();
  for (const auto& a : g.arcs) arcs.push_back({a.two_cell, a.position});
  return {{"p", g.p}, {"edge_vertices", edges}, {"star_cells", g.star_cells}, {"arcs", arcs}};
}

Json to_json(const FreeProductWord& w) {
  Json letters = Json::array();
  for (const auto& x : w) letters.push_back({x.factor, x.exponent});
  return {{"text", free_product_to_string(w)}, {"letters", letters}};
}

Json to_json(const LargenessCertificate& cert) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = "largeness_certificate";
  j["p"] = cert.p;
  j["presentation"] = format_presentation(cert.cover.presentation());
  j["cover"] = to_json(cert.cover, cert.p);
  j["d_set"] = cert.d_set;
  j["kernel_dims"] = cert.kernel_dims;
  j["cocycles"] = Json::array();
  for (const auto& g : cert.cocycles) j["cocycles"].push_back(to_json(g));
  j["witness_loops"] = Json::array();
  for (const auto& loop : cert.witness_loops) j["witness_loops"].push_back(signed_cells(loop));
  j["images_for_schreier_generators"] = cert.images_for_schreier_generators;
  j["generator_images"] = Json::array();
  for (const auto& w : cert.generator_images) j["generator_images"].push_back(to_json(w));
  return j;
}

LargenessCertificate certificate_from_json(const Json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchema) throw InputError("report", "unsupported certificate schema");
    if (j.at("kind").get<std::string>() != "largeness_certificate") throw InputError("report", "not a certificate");
    const auto p = j.at("p").get<Residue>();
    auto pres = std::make_shared<const Presentation>(parse_presentation(j.at("presentation").get<std::string>()));
    auto action = j.at("cover").at("action").get<std::vector<std::vector<std::uint32_t>>>();
    if (action.size() != pres->generator_count()) throw InputError("report", "cover action has wrong generator count");
    LargenessCertificate cert{p, CosetTable(pres, std::move(action)), j.at("d_set").get<std::vector<std::uint32_t>>(),
                              j.at("kernel_dims").get<std::array<std::size_t, 2>>(), {}, {}, {},
                              j.at("images_for_schreier_generators").get<bool>()};
    for (const auto& c : j.at("cocycles")) {
      RegularModPCocycle g;
      g.p = c.at("p").get<Residue>();
      for (const auto& ev : c.at("edge_vertices"))
        g.edge_vertices.push_back({ev.at(0).get<std::uint32_t>(), ev.at(1).get<Residue>()});
      g.star_cells = c.at("star_cells").get<std::vector<std::uint32_t>>();
      for (const auto& a : c.at("arcs")) g.arcs.push_back({a.at(0).get<std::uint32_t>(), a.at(1).get<std::uint32_t>()});
      cert.cocycles.push_back(std::move(g));
    }
    for (const auto& loop : j.at("witness_loops")) {
      std::vector<SignedCell> path;
      for (const auto& x : loop) path.push_back({x.at(0).get<std::uint32_t>(), x.at(1).get<std::int8_t>()});
      cert.witness_loops.push_back(std::move(path));
    }
    for (const auto& w : j.at("generator_images")) {
      FreeProductWord word;
      for (const auto& x : w.at("letters")) word.push_back({x.at(0).get<std::uint32_t>(), x.at(1).get<Residue>()});
      cert.generator_images.push_back(std::move(word));
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("report", std::string("malformed certificate: ") + e.what());
  }
}

Json to_json(const CheegerResult& h) {
  Json j;
  j["method"] = h.method == CheegerMethod::exact ? "exact" : "bounds";
  j["value"] = to_json(h.value);
  j["witness"] = h.witness;
  j["largest_minimizer"] = optional_json(h.largest_minimizer);
  if (h.method == CheegerMethod::bounds) {
    // Floating point, unlike every other number in the reports.
    j["spectral"] = {{"lambda1", optional_json(h.lambda1)},
                     {"lower", optional_json(h.spectral_lower)},
                     {"upper", optional_json(h.spectral_upper)}};
  }
  return j;
}

Json to_json(const CutDiagnostics& d) {
  return {{"d_set", d.d_set},
          {"boundary", d.boundary},
          {"h_value", to_json(d.h_value)},
          {"dp", {{"a", d.dp_a}, {"b", d.dp_b}, {"c", d.dp_c}}},
          {"edge_types", {{"i", d.type_i}, {"ii", d.type_ii}, {"iii", d.type_iii}}},
          {"bounds", {{"i", d.bound_i}, {"ii_iii", d.bound_ii_iii}, {"c_vertices", d.bound_c_vertices}}},
          {"c_vertices", d.c_vertices},
          {"mv_codimension", d.mv_codimension},
          {"gamma_c_components", d.gamma_c_components},
          {"hp_exponent", d.hp_exponent},
          {"all_bounds_hold", d.all_ok()}};
}

Json to_json(const SweepReport& r) {
  Json j;
  j["cuts_tried"] = r.cuts_tried;
  j["cuts_evaluated"] = r.cuts_evaluated;
  j["successes"] = r.successes;
  j["min_kernel_dim"] = r.cuts_tried ? Json(r.min_kernel_dim) : Json(nullptr);
  j["max_kernel_dims"] = r.max_kernel_dims;
  j["best_hp_bound"] = r.best_hp ? to_json(*r.best_hp) : Json(nullptr);
  j["threshold_without_certificate"] = r.threshold_without_certificate;
  j["diagnostics_run"] = r.diagnostics_run;
  j["bound_violations"] = r.bound_violations;
  j["violations"] = Json::array();
  for (const auto& v : r.violations) j["violations"].push_back(to_json(v));
  return j;
}

Json to_json(const GrowthLedger& ledger) {
  Json levels = Json::array();
  for (const auto& l : ledger.levels) levels.push_back({{"level", l.level}, {"index", l.index}, {"count", l.count}, {"r", l.r}});
  Json j;
  j["p"] = ledger.p;
  j["d_p"] = ledger.d_p;
  j["levels"] = levels;
  j["expected_level_one"] = optional_json(ledger.expected_level_one());
  j["count_inequality_holds"] = ledger.count_inequality_holds();
  j["homology_bound_holds"] = ledger.homology_bound_holds();
  j["truncated"] = ledger.truncated;
  if (ledger.truncated) j["truncation_note"] = ledger.truncation_note;
  return j;
}

Json to_json(const GrowthResult& result) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < result.nodes.size(); ++i) {
    const auto& n = result.nodes[i];
    nodes.push_back({{"id", i},
                     {"level", n.level},
                     {"index", n.table.index()},
                     {"dp", n.dp},
                     {"gradient", to_json(Rational(static_cast<std::int64_t>(n.dp) - 1,
                                                   static_cast<std::int64_t>(n.table.index())))},
                     {"key", n.key},
                     {"parents", n.parents}});
  }
  return {{"ledger", to_json(result.ledger)},
          {"gradient_violations", result.gradient_violations},
          {"subnormal_bound_violations", result.subnormal_bound_violations},
          {"nodes", nodes}};
}

Json to_json(const GradientReport& g) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.dp.size(); ++i)
    rows.push_back({{"index", g.index[i]},
                    {"dp", g.dp[i]},
                    {"gradient", to_json(g.gradient[i])},
                    {"normalized_dp", to_json(g.normalized[i])},
                    {"infimum", to_json(g.infimum[i])}});
  return {{"levels", rows}, {"non_increasing", g.non_increasing}};
}

Json to_json(const GrowthDiagnostics& d) {
  Json bounds = Json::array();
  for (const auto& b : d.lower_bounds)
    bounds.push_back({{"level", b.level},
                      {"exponent", b.exponent},
                      {"value", optional_json(b.value)},
                      {"log_value", b.log_value},
                      {"holds", b.holds}});
  return {{"p", d.p},
          {"log_count_ratio", d.log_count_ratio},
          {"rank_sum_ratio", d.rank_sum_ratio},
          {"upper_bound_holds", d.upper_bound_holds},
          {"lambda", d.lambda ? to_json(*d.lambda) : Json(nullptr)},
          {"lower_bounds", bounds}};
}

Json to_json(const TauDiagnostics& t) {
  Json levels = Json::array();
  for (const auto& l : t.levels)
    levels.push_back({{"index", l.index},
                      {"cheeger", l.cheeger ? to_json(*l.cheeger) : Json(nullptr)},
                      {"dp", l.dp},
                      {"gradient", to_json(l.gradient)},
                      {"normalized_dp", to_json(l.normalized_dp)}});
  return {{"p", t.p},
          {"levels", levels},
          {"h_monotone", t.h_monotone},
          {"gradient_monotone", t.gradient_monotone},
          {"hint", t.hint}};
}

Json to_json(const GoodnessLedger& ledger) {
  Json rows = Json::array();
  for (const auto& r : ledger.rows)
    rows.push_back({{"index", r.index},
                    {"n", r.n},
                    {"k", r.k},
                    {"distance", r.distance.value},
                    {"distance_exact", r.distance.exact},
                    {"rate", to_json(r.rate)},
                    {"relative_distance", to_json(r.relative_distance)},
                    {"min_relative_size", r.k ? to_json(r.class_minimum.value) : Json(nullptr)},
                    {"min_relative_size_exact", r.class_minimum.exact},
                    {"classes_tried", r.class_minimum.classes_tried}});
  Json j{{"p", ledger.p}, {"rows", rows}, {"hypothesis", ledger.hypothesis}};
  if (!ledger.dichotomy.empty()) j["dichotomy"] = ledger.dichotomy;
  return j;
}

Json chain_json(const SubnormalChain& chain) {
  const auto v = chain.validate();
  Json tables = Json::array();
  for (const auto& t : chain.tables) tables.push_back(to_json(t, chain.p));
  return {{"p", chain.p},
          {"indices", chain.step_indices()},
          {"first_step_normal", v.first_step_normal},
          {"fully_subnormal", v.fully_subnormal},
          {"tables", tables}};
}

}  // namespace homgrowth
