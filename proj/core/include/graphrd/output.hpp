#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace graphrd {

/// Shortest round-trippable decimal form ("%.17g" trimmed), so reruns give
/// byte-identical CSV bodies.
std::string format_real(double x);

/// Writes `contents` to a sibling temp file and renames it over `path`.
/// Creates parent directories. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace graphrd
