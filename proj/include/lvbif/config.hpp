#pragma once

#include "lvbif/model.hpp"
#include "lvbif/regions.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace lvbif {

using json = nlohmann::json;

/// {"(i,j)": value, ...}; missing keys are zero. Throws ConfigError on malformed keys.
CoefficientPoly poly_from_json(const json& j, int degree);
json poly_to_json(const CoefficientPoly& p);

/// Parses {"form":"raw"|"reduced", "degree":k, ...}. A raw system with p12(0), p21(0)
/// both negative goes through the negative-pair reduction; mixed signs throw SignError.
ReducedSystem system_from_json(const json& j);
json system_to_json(const ReducedSystem& sys);

/// Reads and parses a file; I/O and JSON syntax errors become ConfigError.
json read_json(const std::filesystem::path& path);
ReducedSystem load_system(const std::filesystem::path& path);

Degeneracy parse_family(const std::string& s);

/// A system file carrying "name" and "declared": {"family", "signs"}.
Fixture fixture_from_json(const json& j);
/// Every *.json under dir/<family>, sorted by file name.
std::vector<Fixture> load_fixtures(const std::filesystem::path& dir, Degeneracy family);

} // namespace lvbif
