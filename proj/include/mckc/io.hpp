#pragma once

#include <string>

#include <json.hpp>

#include "mckc/gaps.hpp"
#include "mckc/pipeline.hpp"

namespace mckc::io {

using nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rationals travel as JSON integers when integral, as "p/q" strings
// otherwise; plain JSON doubles are accepted on input and snapped at 1e-9.
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j, const std::string& where);
json dist_to_json(const Dist& d);
Dist dist_from_json(const json& j, const std::string& where);

json instance_to_json(const MckcInstance& inst);
MckcInstance instance_from_json(const json& j);

json cckp_to_json(const CckpInstance& inst);
CckpInstance cckp_from_json(const json& j);

json supply_to_json(const SupplyVector& s);
SupplyVector supply_from_json(const json& j);

json solution_to_json(const MckcInstance& inst, const McKcSolution& sol);
McKcSolution solution_from_json(const MckcInstance& inst, const json& j);

json quality_to_json(const QualityReport& q);

json farkas_to_json(const FarkasCert& cert);
FarkasCert farkas_from_json(const json& j);

json weak_decomposition_to_json(const MckcInstance& inst, const WeakDecomposition& d);
WeakDecomposition weak_decomposition_from_json(const MckcInstance& inst, const json& j);
json strong_decomposition_to_json(const MckcInstance& inst, const StrongDecomposition& d);
StrongDecomposition strong_decomposition_from_json(const MckcInstance& inst, const json& j);

json allocation_to_json(const Allocation& a);
Allocation allocation_from_json(const json& j);

json conf_solution_to_json(const ConfLpSolution& z);
ConfLpSolution conf_solution_from_json(const json& j);

json mckc_gap_to_json(const MckcGap& g);
json petersen_to_json(const PetersenGap& g);
json conf_gap_to_json(const ConfGap& g);
json bs_gap_to_json(const BansalSviridenkoGap& g);

}  // namespace mckc::io
