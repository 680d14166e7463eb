#pragma once

#include <string>

#include <json.hpp>

#include "rho/derivations.hpp"
#include "rho/parser.hpp"
#include "rho/taylor.hpp"

namespace rho::report {

using nlohmann::json;

// FNV-1a hash of the model source, rendered as hex; identifies inputs in
// serialized reports.
std::string digest(const std::string& text);

json header(const std::string& command, const std::string& model_name,
            const std::string& source_text);

// All rationals are serialized as exact "p/q" strings.
std::string rational_str(const Rational& q);

json vec_json(const FDAlgebra& H, const linalg::Vec& v);
json derivation_json(const Derivation& D);
json chain_derivation_json(const ChainDerivation& D);
json betti_json(const CohomologyResult& res, int max_degree);
json ring_json(const RingExport& ex);
json rigidity_json(const RigidityReport& rep, const FDAlgebra& H);
json lower_grading_json(const LowerGrading& lg);
json peel_json(const PeelResult& pr, const FDAlgebra& H, const TorusBasis& t);

// Rebuilds a derivation from its serialized form and re-validates it; used
// by the round-trip tests and available to downstream tooling.
Derivation derivation_from_json(const json& j, const FDPtr& H);

}  // namespace rho::report
