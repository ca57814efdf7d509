#include "hamming_shift/serialize.hpp"

#include <sstream>

namespace hamming_shift {

namespace {

Json rational_json(const Rational& v) { return to_fraction_string(v); }

}  // namespace

Json json_of(const Modulus& mod) {
  return Json{{"kind", to_string(mod.kind)}, {"width", mod.width}};
}

Json json_of(const BlockDecomposition& decomposition) {
  Json blocks = Json::array();
  for (const Block& b : decomposition.blocks)
    blocks.push_back(Json{{"digit", b.digit}, {"length", b.length}});
  return Json{{"width", decomposition.width},
              {"block_count", decomposition.block_count()},
              {"blocks", blocks}};
}

Json json_of(const JointWeightDistribution& dist) {
  Json counts = Json::array();
  const std::size_t n = dist.width();
  for (std::size_t x = 0; x <= n; ++x)
    for (std::size_t y = 0; y <= n; ++y) counts.push_back(to_decimal(dist.count(x, y)));
  return Json{{"width", n},
              {"modulus", json_of(dist.modulus())},
              {"total", to_decimal(dist.total())},
              {"layout", "row-major x*(n+1)+y"},
              {"counts", counts}};
}

Json json_of(const EmpiricalJoint& joint) {
  Json cells = Json::array();
  for (const auto& [xy, c] : joint.counts)
    cells.push_back(Json{{"x", xy.first}, {"y", xy.second}, {"count", c}});
  return Json{{"width", joint.width},
              {"modulus", json_of(joint.modulus)},
              {"samples", joint.samples},
              {"seed", joint.seed},
              {"generator", joint.generator},
              {"cells", cells}};
}

Json json_of(const ShiftReport& report) {
  return Json{{"width", report.width},
              {"modulus", json_of(report.modulus)},
              {"alpha", report.alpha_binary},
              {"total", to_decimal(report.total)},
              {"light_count", to_decimal(report.light_count)},
              {"heavy_count", to_decimal(report.heavy_count)},
              {"light_to_heavy", to_decimal(report.light_to_heavy)},
              {"light_to_light", to_decimal(report.light_to_light)},
              {"heavy_to_light", to_decimal(report.heavy_to_light)},
              {"heavy_to_heavy", to_decimal(report.heavy_to_heavy)},
              {"union_size", to_decimal(report.union_size)},
              {"epsilon", rational_json(report.epsilon)}};
}

Json json_of(const QuadrantMasses& masses) {
  return Json{{"light_to_heavy", rational_json(masses.light_to_heavy)},
              {"light_to_light", rational_json(masses.light_to_light)},
              {"heavy_to_light", rational_json(masses.heavy_to_light)},
              {"heavy_to_heavy", rational_json(masses.heavy_to_heavy)}};
}

Json json_of(const BlockDistribution& dist) {
  Json support = Json::array();
  for (const auto& [xy, p] : dist.support)
    support.push_back(Json{{"x", xy.first}, {"y", xy.second}, {"p", rational_json(p)}});
  Json j{{"digit", dist.digit},
         {"length", dist.length},
         {"carry_in", dist.carry_in},
         {"support", support}};
  if (dist.carry_out) j["carry_out"] = *dist.carry_out;
  if (dist.type) j["type"] = to_string(*dist.type);
  return j;
}

Json json_of(const CovarianceSummary& summary) {
  return Json{{"length", summary.length},
              {"type", to_string(summary.type)},
              {"var_x", rational_json(summary.var_x)},
              {"var_y", rational_json(summary.var_y)},
              {"cov", rational_json(summary.cov)},
              {"mean_x", rational_json(summary.mean_x)},
              {"mean_y", rational_json(summary.mean_y)},
              {"translation_k", rational_json(summary.translation_k)}};
}

Json json_of(const MonteCarloEstimate& estimate) {
  return Json{{"estimate", estimate.estimate},
              {"standard_error", estimate.standard_error},
              {"hits", estimate.hits},
              {"samples", estimate.samples},
              {"seed", estimate.seed},
              {"quantity", estimate.quantity},
              {"generator", estimate.generator}};
}

Json json_of(const GaussianSummary& summary) {
  return Json{{"block_length", summary.block_length},
              {"block_count", summary.block_count},
              {"ambient_width", summary.ambient_width},
              {"cov_c", rational_json(summary.cov_c)},
              {"cov_d", rational_json(summary.cov_d)},
              {"m_entry_var", rational_json(summary.m_entry_var)},
              {"m_entry_cov", rational_json(summary.m_entry_cov)},
              {"axis_sq_major", rational_json(summary.axis_sq_major)},
              {"axis_sq_minor", rational_json(summary.axis_sq_minor)},
              {"density_floor_log", summary.density_floor_log}};
}

Json json_of(const RemainderSummary& summary) {
  return Json{{"c_sum", rational_json(summary.c_sum)},
              {"d_sum", rational_json(summary.d_sum)},
              {"total_length", summary.total_length},
              {"all_type1", summary.all_type1},
              {"radius", summary.radius},
              {"mass_bound", summary.mass_bound}};
}

Json json_of(const TheoremReport& report) {
  Json j{{"alpha", report.alpha_binary},
         {"width", report.width},
         {"modulus", json_of(report.modulus)},
         {"trials", report.trials},
         {"seed", report.seed},
         {"m_blocks", report.m_blocks},
         {"wide_blocks", report.wide_blocks},
         {"consolidated", report.consolidated},
         {"eligible_blocks", report.eligible_blocks},
         {"arrangement", json_of(report.arrangement)},
         {"type_counts",
          Json{{"T1", report.type_counts[0]},
               {"T2", report.type_counts[1]},
               {"T3", report.type_counts[2]},
               {"T4", report.type_counts[3]}}},
         {"chosen_carries", report.chosen_carries},
         {"chosen_length", report.chosen_length},
         {"chosen_count", report.chosen_count},
         {"gaussian", json_of(report.gaussian)},
         {"remainder", json_of(report.remainder)},
         {"translation_k", rational_json(report.translation_k)},
         {"predicted_quadrant_floor_log", report.predicted_quadrant_floor_log},
         {"theorem_constant_log", report.theorem_constant_log},
         {"final_bound_log", report.final_bound_log},
         {"measured_fraction", rational_json(report.measured_fraction)},
         {"measured_exact", report.measured_exact}};
  if (report.consolidated) {
    j["consolidation_pattern"] = report.consolidation_pattern;
    j["consolidation_fraction"] = rational_json(report.consolidation_fraction);
  }
  if (!report.measured_exact) {
    j["measured_stderr"] = report.measured_stderr;
    j["measured_samples"] = report.measured_samples;
  }
  return j;
}

namespace {

std::string csv_preamble(const MetaLines& meta) {
  std::ostringstream out;
  out << "# tool=hamming-shift " << HAMMING_SHIFT_VERSION << "\n";
  for (const auto& [key, value] : meta) out << "# " << key << "=" << value << "\n";
  return out.str();
}

}  // namespace

std::string joint_to_csv(const JointWeightDistribution& dist, const MetaLines& meta) {
  std::ostringstream out;
  out << csv_preamble(meta) << "x,y,count\n";
  for (std::size_t x = 0; x <= dist.width(); ++x)
    for (std::size_t y = 0; y <= dist.width(); ++y)
      if (dist.count(x, y) != 0) out << x << "," << y << "," << to_decimal(dist.count(x, y)) << "\n";
  return out.str();
}

std::string joint_to_csv(const EmpiricalJoint& joint, const MetaLines& meta) {
  std::ostringstream out;
  out << csv_preamble(meta) << "x,y,count\n";
  for (const auto& [xy, c] : joint.counts)
    out << xy.first << "," << xy.second << "," << c << "\n";
  return out.str();
}

Json output_envelope(const Json& config) {
  return Json{{"tool", Json{{"name", "hamming-shift"}, {"version", HAMMING_SHIFT_VERSION}}},
              {"config", config}};
}

}  // namespace hamming_shift
