#pragma once

#include <json.hpp>

#include "homgrowth/codes.hpp"
#include "homgrowth/expansion.hpp"
#include "homgrowth/growth.hpp"
#include "homgrowth/largeness.hpp"

namespace homgrowth {

using Json = nlohmann::ordered_json;

/// Version stamped into every report as `schema`.
constexpr int kReportSchema = 1;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// Index, canonical key and canonical form of a coset table.
Json to_json(const CosetTable& t, Residue p);
Json to_json(const RegularModPCocycle& g);
Json to_json(const FreeProductWord& w);

/// Self-contained certificate: presentation text, cover in canonical form,
/// cut, cocycles, witness loops and generator images.
Json to_json(const LargenessCertificate& cert);
/// Rebuilds a certificate from its JSON form; throws InputError on malformed
/// data. Does not verify it.
LargenessCertificate certificate_from_json(const Json& j);

Json to_json(const CheegerResult& h);
Json to_json(const CutDiagnostics& d);
Json to_json(const SweepReport& r);
Json to_json(const GrowthLedger& ledger);
Json to_json(const GrowthResult& result);
Json to_json(const GradientReport& g);
Json to_json(const GrowthDiagnostics& d);
Json to_json(const TauDiagnostics& t);
Json to_json(const GoodnessLedger& ledger);
Json chain_json(const SubnormalChain& chain);

}  // namespace homgrowth
