#pragma once

// Deterministic JSON text: object keys in sorted order, two-space indent,
// floating-point numbers with 17 significant digits so they round-trip.

#include <string>

#include <json.hpp>

namespace qinvar {

/// %.17g, or "null" for non-finite values.
std::string format_double(double x);

std::string to_json_text(const nlohmann::json& doc);

}  // namespace qinvar
