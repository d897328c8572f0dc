#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "rhmap/mapspace.hpp"

namespace rhmap::report {

using json = nlohmann::json;  // object keys serialize sorted: reports are canonical

// All reports share the schema {model, mc, components[], checks[]}. Rationals
// render as "p/q" strings; pair labels as "h@l". Listing is windowed: basis
// entries of degree >= -1, brackets whose inputs sit in degrees >= 0 (the
// component-relevant part); the underlying model keeps everything.
json model_section(const MappingSpaceModel& m);
json mc_section(const MappingSpaceModel& m, const McSystem& sys);
json component_section(const MappingSpaceModel& m, const ComponentModel& c,
                       const SullivanAlgebra& minimal_model, const std::map<int, int>& ranks);
json grouplike_section(const GroupLikeReport& g);

json check_entry(const std::string& name, bool pass, const std::string& detail);

json build_model_report(const MappingSpaceModel& m, bool check_transfer, int max_arity = 4);

// Reconstructs the model from an earlier report (source/target texts embedded).
MappingSpaceModel model_from_report(const json& report);

json euler_check(const ComponentModel& c);
json expected_ranks_check(const std::map<int, int>& computed, const std::map<int, int>& expected,
                          const std::string& source_note);

std::string dump(const json& j);

}  // namespace rhmap::report
