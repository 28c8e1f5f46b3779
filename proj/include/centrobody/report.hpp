#pragma once

#include <string>
#include <vector>

#include "centrobody/vec.hpp"
#include "json.hpp"

namespace centrobody::report {

using Json = nlohmann::json;

/// Deterministic JSON text: object keys sorted, floating-point values
/// printed with %.12e, non-finite values as null, two-space indentation.
std::string dump(const Json& j);

/// Header row then one line per row, fields printed with %.12e.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Writes text to path, or to stdout when path is "-". Throws
/// std::runtime_error when the file cannot be written.
void write_text(const std::string& path, const std::string& text);

Json vec_json(const Vec& v, int n);

}  // namespace centrobody::report
