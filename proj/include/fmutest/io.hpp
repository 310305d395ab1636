#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace fmutest {

std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename so readers never see a torn file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

void append_line(const std::filesystem::path& path, std::string_view line);

/// UTC ISO-8601 with millisecond precision, e.g. 2026-10-14T09:30:00.123Z.
std::string iso8601_now();

}  // namespace fmutest
