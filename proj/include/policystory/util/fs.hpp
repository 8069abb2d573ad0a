#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace policystory {

std::string read_file(const std::filesystem::path& path);

// Writes via a sibling temp file and rename(2); readers never observe a
// partially written file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace policystory
