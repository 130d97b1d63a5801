#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace nonnoether {

/// Pretty-prints with two-space indent, keys in insertion order and every
/// floating-point value written with 17 significant digits. Non-finite
/// values become null.
void write_json(std::ostream& out, const nlohmann::ordered_json& value);
std::string to_json_text(const nlohmann::ordered_json& value);

}  // namespace nonnoether
