#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "balpack/bmbp.hpp"
#include "balpack/errors.hpp"
#include "balpack/instance.hpp"
#include "balpack/kbfbp.hpp"
#include "balpack/rational.hpp"
#include "balpack/reductions.hpp"
#include "balpack/verify.hpp"

namespace balpack {

using json = nlohmann::json;

/// Rationals travel as the string "p/q" in lowest terms, or as a bare
/// integer when the denominator is 1.
inline json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.num().fits_slong_p()) return json(r.num_ll());
  return json(r.str());
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw Error(Errc::invalid_input, "rational must be an integer or a \"p/q\" string");
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sizes") || !j.contains("capacity"))
    throw Error(Errc::invalid_input, "instance needs \"sizes\" and \"capacity\"");
  std::vector<std::int64_t> sizes;
  for (const auto& v : j.at("sizes")) {
    if (!v.is_number_integer()) throw Error(Errc::invalid_input, "sizes must be integers");
    sizes.push_back(v.get<std::int64_t>());
  }
  Instance inst = validate_instance(sizes, rational_from_json(j.at("capacity")));
  if (j.contains("bins")) inst.bins = j.at("bins").get<int>();
  if (j.contains("stages")) inst.stages = j.at("stages").get<int>();
  if (j.contains("split_bound")) inst.split_bound = j.at("split_bound").get<int>();
  return inst;
}

inline json instance_to_json(const Instance& inst) {
  json j;
  j["sizes"] = inst.original_sizes();
  j["capacity"] = rational_to_json(inst.capacity);
  if (inst.bins) j["bins"] = *inst.bins;
  if (inst.stages) j["stages"] = *inst.stages;
  if (inst.split_bound) j["split_bound"] = *inst.split_bound;
  return j;
}

inline json plan_to_json(const TwoStagePlan& plan) {
  json j;
  j["bins"] = plan.bins;
  j["tilde_c"] = rational_to_json(plan.tilde_c);
  j["sigma"] = plan.sigma;
  json l1 = json::array(), l2 = json::array(), loads = json::array();
  for (const auto& r : plan.lambda1) l1.push_back(rational_to_json(r));
  for (const auto& r : plan.lambda2) l2.push_back(rational_to_json(r));
  for (const auto& r : plan.bin_loads) loads.push_back(rational_to_json(r));
  j["lambda1"] = std::move(l1);
  j["lambda2"] = std::move(l2);
  json as = json::array();
  for (const auto& a : plan.assignments)
    as.push_back({{"object", a.object},
                  {"bin", a.bin},
                  {"stage", a.stage},
                  {"fraction", rational_to_json(a.fraction)}});
  j["assignments"] = std::move(as);
  j["bin_loads"] = std::move(loads);
  return j;
}

inline TwoStagePlan plan_from_json(const json& j) {
  TwoStagePlan plan;
  plan.bins = j.at("bins").get<int>();
  plan.tilde_c = rational_from_json(j.at("tilde_c"));
  plan.sigma = j.at("sigma").get<std::vector<int>>();
  for (const auto& v : j.at("lambda1")) plan.lambda1.push_back(rational_from_json(v));
  for (const auto& v : j.at("lambda2")) plan.lambda2.push_back(rational_from_json(v));
  for (const auto& v : j.at("assignments"))
    plan.assignments.push_back({v.at("object").get<std::int32_t>(),
                                v.at("bin").get<std::int32_t>(),
                                v.at("stage").get<std::int32_t>(),
                                rational_from_json(v.at("fraction"))});
  if (j.contains("bin_loads"))
    for (const auto& v : j.at("bin_loads")) plan.bin_loads.push_back(rational_from_json(v));
  return plan;
}

inline json witness_to_json(const KbfbpWitness& w) {
  json j;
  j["x"] = w.x;
  json alpha = json::array();
  for (const auto& a : w.alpha) alpha.push_back(rational_to_json(a));
  j["alpha"] = std::move(alpha);
  return j;
}

inline KbfbpWitness witness_from_json(const json& j) {
  KbfbpWitness w;
  w.x = j.at("x").get<std::vector<std::vector<int>>>();
  for (const auto& row : w.x)
    for (int v : row)
      if (v != 0 && v != 1) throw Error(Errc::invalid_input, "x entries must be 0 or 1");
  for (const auto& v : j.at("alpha")) w.alpha.push_back(rational_from_json(v));
  return w;
}

inline json reduced_to_json(const ReducedInstance& red) {
  json j = instance_to_json(red.instance);
  j["reduction"] = {
      {"kind", red.kind == ReductionKind::partition ? "partition" : "subset_third"},
      {"pad_value", red.pad_value},
      {"pad_count", red.pad_count},
      {"residue", red.residue},
  };
  return j;
}

inline ReducedInstance reduced_from_json(const json& j) {
  ReducedInstance red;
  red.instance = instance_from_json(j);
  const auto& r = j.at("reduction");
  std::string kind = r.at("kind").get<std::string>();
  if (kind == "partition")
    red.kind = ReductionKind::partition;
  else if (kind == "subset_third")
    red.kind = ReductionKind::subset_third;
  else
    throw Error(Errc::invalid_input, "unknown reduction kind '" + kind + "'");
  red.pad_value = r.at("pad_value").get<std::int64_t>();
  red.pad_count = r.at("pad_count").get<int>();
  red.residue = r.at("residue").get<int>();
  auto all = red.instance.original_sizes();
  if (red.pad_count < 0 || red.pad_count >= static_cast<int>(all.size()))
    throw Error(Errc::invalid_input, "pad_count out of range");
  red.source.assign(all.begin(), all.end() - red.pad_count);
  return red;
}

inline json report_to_json(const VerificationReport& rep) {
  json j;
  j["ok"] = rep.ok;
  json v = json::array();
  for (const auto& viol : rep.violations)
    v.push_back({{"constraint", viol.constraint},
                 {"subject", viol.subject},
                 {"lhs", rational_to_json(viol.lhs)},
                 {"rhs", rational_to_json(viol.rhs)}});
  j["violations"] = std::move(v);
  return j;
}

}  // namespace balpack
