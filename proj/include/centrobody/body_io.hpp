#pragma once

#include <string>

#include "centrobody/bodies.hpp"

namespace centrobody {

/// Parses {"dim": n, "shape": {"type": ..., ...}} (optional "scale", "id").
/// Throws std::invalid_argument on malformed or invalid input.
StarBody body_from_json_text(const std::string& text);
StarBody body_from_file(const std::string& path);

/// Serializes a body to the same schema (sorted keys, round-trip floats).
std::string body_to_json_text(const StarBody& body);

}  // namespace centrobody
