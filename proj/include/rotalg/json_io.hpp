#pragma once

#include <json.hpp>

#include "rotalg/chern_lattice.hpp"
#include "rotalg/pr_numeric.hpp"
#include "rotalg/trace_functionals.hpp"
#include "rotalg/trace_realization.hpp"

namespace rotalg {

using Json = nlohmann::ordered_json;

/// {"exact": "...", "numeric": [re, im]}
Json scalar_json(const PhaseScalar& s, const ThetaParam& theta);
Json t2_json(const T2Vector& v, const ThetaParam& theta);
Json t4_json(const T4Vector& v, const ThetaParam& theta);

Json genus_json(const Genus& g);
Json recipe_json(const SynthesisRecipe& r);
Json decision_json(const MembershipDecision& d);

/// Certificate tree; each node records its construction step under "lemma".
Json certificate_json(const Certificate& c);
/// Throws std::runtime_error (or nlohmann exceptions) on malformed input.
Certificate certificate_from_json(const Json& j);

Json loop_json(const LoopElement& e);
LoopElement loop_from_json(const Json& j);

Json invariants_json(const LoopInvariants& inv);

}  // namespace rotalg
