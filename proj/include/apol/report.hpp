#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "apol/analogy.hpp"
#include "apol/ap_atlas.hpp"
#include "apol/classifier.hpp"
#include "apol/galois.hpp"

namespace apol {

//! Structured (JSON) forms of the engine's result types.  nlohmann objects
//! keep keys sorted, so every dump is deterministic.
using json = nlohmann::json;

inline json to_json(const ap_witness& w) {
  auto bits = [](const std::vector<uint8_t>& v) {
    std::string s;
    for (uint8_t b : v) s += b ? '1' : '0';
    return s;
  };
  return json{{"a", bits(w.a)},
              {"b", bits(w.b)},
              {"c", bits(w.c)},
              {"d", bits(w.d)},
              {"image", {w.image[0], w.image[1], w.image[2], w.image[3]}}};
}

inline json to_json(const violation& v) {
  json columns = json::array();
  for (uint16_t t : v.columns) {
    json col = json::array();
    for (int r = 0; r < 4; ++r) col.push_back((t >> r) & 1);
    columns.push_back(col);
  }
  return json{{"constraint", v.constraint_index}, {"columns", columns}, {"image", v.image}};
}

inline json to_json(const pol_result& result, const std::string& src_name,
                    const std::string& dst_name) {
  std::map<std::string, uint64_t> tallies;
  for (const auto& f : result.members)
    ++tallies[std::string(function_class_name(classify_function(f)))];
  json members = json::array();
  for (const auto& f : result.members) members.push_back(f.serialize());
  return json{{"src", src_name},
              {"dst", dst_name},
              {"arity", result.arity},
              {"member_count", result.members.size()},
              {"members", members},
              {"families", tallies}};
}

inline json to_json(const postulate_report& report) {
  json out;
  for (int p = 0; p < postulate_count; ++p) {
    const auto& check = report.checks[static_cast<size_t>(p)];
    json entry{{"holds", check.holds}};
    if (!check.holds) {
      std::string w;
      for (uint8_t b : check.witness) w += b ? '1' : '0';
      entry["witness"] = w;
    }
    std::string key{postulate_name(static_cast<postulate>(p))};
    std::replace(key.begin(), key.end(), ' ', '_');
    out[key] = entry;
  }
  return out;
}

inline json to_json(const error_report& report) {
  json out{{"function", report.function},
           {"src", report.src},
           {"dst", report.dst},
           {"mode", report.exact ? "exact" : "sampled"},
           {"selections_checked", report.total_checked},
           {"solvable", report.solvable},
           {"violations", report.violations},
           {"rate", {{"numerator", report.violations},
                     {"denominator", report.solvable},
                     {"value", report.rate()}}},
           {"degenerate", report.degenerate},
           {"nearest_affine_distance", report.affine_distance},
           {"epsilon", report.epsilon}};
  if (report.sample) out["sampling"] = {{"seed", report.sample->seed}, {"draws", report.sample->draws}};
  if (report.first_violation) out["first_violation"] = to_json(*report.first_violation);
  return out;
}

inline json to_json(const atlas_cell& cell) {
  json out{{"src", "R" + std::to_string(cell.src_index + 1)},
           {"dst", "R" + std::to_string(cell.dst_index + 1)},
           {"arity", cell.arity},
           {"expected_family", std::string(family_name(cell.expected))},
           {"member_count", cell.member_count},
           {"expected_count", cell.expected_count},
           {"match", cell.match}};
  if (!cell.match) {
    out["unexpected_members"] = cell.unexpected_members;
    out["missing_members"] = cell.missing_members;
  }
  return out;
}

inline json to_json(const atlas_verdict& verdict) {
  json cells = json::array();
  for (const auto& c : verdict.cells) cells.push_back(to_json(c));
  return json{{"max_arity", verdict.max_arity},
              {"pass", verdict.pass()},
              {"seconds", verdict.seconds},
              {"cells", cells}};
}

inline json to_json(const prediction& p) {
  json out{{"applicable_triples", p.applicable_triples},
           {"votes", {{"0", p.votes[0]}, {"1", p.votes[1]}}}};
  switch (p.kind) {
    case prediction::outcome::label:
      out["outcome"] = "label";
      out["label"] = static_cast<int>(p.label);
      break;
    case prediction::outcome::abstain: out["outcome"] = "abstain"; break;
    case prediction::outcome::tie: out["outcome"] = "tie"; break;
  }
  if (p.first_triple)
    out["first_triple"] = {(*p.first_triple)[0], (*p.first_triple)[1], (*p.first_triple)[2]};
  return out;
}

}  // namespace apol
