#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "reeb/convex_body.hpp"

namespace reeb {

/// Body specification schema:
///   {"kind": "ellipsoid" | "dual_power", "a": [...], "q": <real, dual_power only>}
///
/// Entries of "a" may be strings ("3/2", "1.25", "7") which are parsed exactly,
/// or JSON numbers. An ellipsoid is rational when every entry is a string or an
/// integral number; a non-integral JSON number (e.g. 1.41421356237) marks the
/// ellipsoid as approximate ("float mode"). Setting "exact": false forces float
/// mode. Throws Error(ParseError) on schema violations, Error(InvalidBody) on
/// bad values.
ConvexBody body_from_json(const nlohmann::json& spec);
ConvexBody load_body(const std::filesystem::path& path);
nlohmann::json body_to_json(const ConvexBody& body);

}  // namespace reeb
