#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace fmutest::model {

/// Returns the named member of a ZIP archive (stored or deflate), or nullopt
/// when absent. Throws Error{MalformedXml} when the bytes are not a ZIP.
std::optional<std::string> read_zip_member(std::string_view archive, std::string_view member);

[[nodiscard]] bool looks_like_zip(std::string_view bytes) noexcept;

/// Loads modelDescription.xml from either an .fmu archive or a plain XML file.
std::string load_model_description_bytes(const std::filesystem::path& path);

}  // namespace fmutest::model
