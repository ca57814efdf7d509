#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hamming_shift/clt_approx.hpp"
#include "hamming_shift/exact_dp.hpp"

namespace hamming_shift {

using Json = nlohmann::json;

// Exact integers serialize as decimal strings, rationals as "num/den";
// neither survives a float round trip.

Json json_of(const Modulus& mod);
Json json_of(const BlockDecomposition& decomposition);
Json json_of(const JointWeightDistribution& dist);
Json json_of(const EmpiricalJoint& joint);
Json json_of(const ShiftReport& report);
Json json_of(const QuadrantMasses& masses);
Json json_of(const BlockDistribution& dist);
Json json_of(const CovarianceSummary& summary);
Json json_of(const MonteCarloEstimate& estimate);
Json json_of(const GaussianSummary& summary);
Json json_of(const RemainderSummary& summary);
Json json_of(const TheoremReport& report);

using MetaLines = std::vector<std::pair<std::string, std::string>>;

/// CSV with "# key=value" preamble and columns x,y,count (nonzero cells,
/// sorted by x then y).
std::string joint_to_csv(const JointWeightDistribution& dist, const MetaLines& meta);
std::string joint_to_csv(const EmpiricalJoint& joint, const MetaLines& meta);

/// Tool name/version plus the resolved configuration, embedded in every
/// output file so a run can be reproduced bit-identically.
Json output_envelope(const Json& config);

}  // namespace hamming_shift
