#pragma once

// JSON file formats.
//
// Registry:
//   {"charge_specs": [{"name": "electric", "kind": "gauged", "unit": "e"}],
//    "species": [{"id": "e-", "charges": [-1], "spin_multiplicity": 2,
//                 "conjugate_id": "e+"}, ...]}
//
// State:
//   {"n": 2, "terms": [{"labels": [{"species": "e-", "spin": 0},
//                                  {"species": "e+", "spin": 1}],
//                       "re": 0.7071067811865476, "im": 0.0}, ...]}
//
// Doubles are written in shortest round-trip form, so save followed by load
// reproduces every amplitude bit for bit.

#include <filesystem>

#include <json.hpp>

#include "superselect/state.hpp"

namespace superselect::io {

using nlohmann::json;

/// Throws SchemaError naming the offending field.
SpeciesRegistry registry_from_json(const json& j);
json registry_to_json(const SpeciesRegistry& registry);

/// Labels are checked against `registry` when one is given. The state is
/// renormalized only when `normalize` is set.
StateVector state_from_json(const json& j,
                            const SpeciesRegistry* registry = nullptr,
                            bool normalize = false);
json state_to_json(const StateVector& s);

/// Throws SchemaError on unreadable or malformed files.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

SpeciesRegistry load_registry(const std::filesystem::path& path);
void save_registry(const std::filesystem::path& path,
                   const SpeciesRegistry& registry);
StateVector load_state(const std::filesystem::path& path,
                       const SpeciesRegistry* registry = nullptr,
                       bool normalize = false);
void save_state(const std::filesystem::path& path, const StateVector& s);

}  // namespace superselect::io
