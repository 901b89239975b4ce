#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "graphrd/kernel.hpp"

namespace graphrd {

/// Kernel JSON schema:
///   {"kind":"step","n":N,"values":[[...],...]}
///   {"kind":"analytic","family":"smooth_cosine","params":{"c":0.5}}
std::string to_json(const GraphonHandle& w);
GraphonHandle graphon_from_json(std::string_view text);

/// n rows of n whitespace-separated numbers; blank lines and lines starting
/// with '#' are skipped.
Matrix parse_adjacency_text(std::string_view text);
std::string to_adjacency_text(const Matrix& a);

/// Loads a kernel from a file: .json uses the schema above, anything else
/// is read as adjacency text.
GraphonHandle load_graphon(const std::filesystem::path& path);

}  // namespace graphrd
