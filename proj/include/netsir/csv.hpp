#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace netsir {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Strict parse of a whole string as a double; throws std::invalid_argument.
double parse_double(std::string_view text);

/// Writes `contents` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace netsir
