#pragma once

#include <string>
#include <string_view>

#include "henon/henon_map.hpp"

namespace henon {

// Builds a map from a JSON document of the form
//   { "factors": [ { "b": [re, im], "delta": [re, im], "p": "y^2 - 1" }, ... ] }
// where b and delta may also be plain numbers. Malformed documents raise
// InvalidFactor with a message naming the offending field.
HenonMap load_map_json(std::string_view text, const MakeOptions& opts = {});

HenonMap load_map_file(const std::string& path, const MakeOptions& opts = {});

}  // namespace henon
