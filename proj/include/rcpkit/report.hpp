#pragma once

// JSON and CSV renderings of library results. Non-finite numbers become
// null in JSON and NA in CSV.

#include "rcpkit/orthant.hpp"
#include "rcpkit/pushbroom.hpp"
#include "rcpkit/rcpcalc.hpp"
#include "rcpkit/ripcalc.hpp"
#include "rcpkit/spectra.hpp"
#include "rcpkit/wishstat.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rcpkit {

nlohmann::json to_json(const Support& s);
nlohmann::json to_json(const GramSpectrum& s);  // eigenvalues + row-major flattened V
nlohmann::json to_json(const RicResult& r);
nlohmann::json to_json(const RocResult& r);
nlohmann::json to_json(const PairGeometry& g);
nlohmann::json to_json(const BoundInterval& b);
nlohmann::json to_json(const OrthantRatio& r);
nlohmann::json to_json(const MinusTermReport& r);
nlohmann::json to_json(const TestOutcome& t);
nlohmann::json to_json(const TailProbs& t);

/// Campaign summary without the raw sample lists.
nlohmann::json campaign_summary(const EigenCampaign& c, const CampaignTests& tests);

/// Columns, in order:
///   index, xi, cos_alpha, cos_beta, jl_lower, jl_upper, ip_lower, ip_upper,
///   sandwich_holds, epsilon, delta_u, delta_v, delta_joint,
///   jl_rigorous_lower, jl_rigorous_upper, support_mode
std::string rcp_table_csv(const std::vector<RcpRow>& rows);

/// Columns: column, then one per series in the given order. mu series are
/// one shorter than energy series; their last row is NA.
std::string curves_csv(const std::vector<CurveSeries>& series);

/// Header M,supp_size,pass_rate (plus N, tests, passes after it).
std::string pass_rate_csv(const std::vector<PassRateCell>& cells);

}  // namespace rcpkit
