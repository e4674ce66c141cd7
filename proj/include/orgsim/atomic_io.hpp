#pragma once

#include <filesystem>
#include <string_view>

namespace orgsim {

// Writes to "<path>.tmp" and renames, so a crash or I/O error never leaves a
// partial file at the target path.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace orgsim
