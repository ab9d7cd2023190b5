#pragma once

#include <string>
#include <string_view>

namespace mmsim::io {

/// Writes `content` to a temporary file next to `path`, then renames it over
/// `path`, so readers never see a partial file. Throws Error on failure.
void write_file_atomic(const std::string& path, std::string_view content);

/// Whole file as a string. Throws DataError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace mmsim::io
