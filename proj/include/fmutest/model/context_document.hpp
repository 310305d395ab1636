#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fmutest/model/model_description.hpp"

namespace fmutest::model {

struct SourceDocument {
  std::string name;
  std::string text;
};

struct ManifestEntry {
  std::string source;
  std::size_t byte_length = 0;
  std::string digest;
};

struct ContextDocument {
  std::string merged_text;
  std::vector<ManifestEntry> source_manifest;
};

inline constexpr const char* kVariableTableSource = "modelDescription.xml#variables";
inline constexpr const char* kDocumentDelimiter = "---";

/// One tab-separated line per variable: name, causality, min, max, unit, description.
std::string render_variable_table(const ModelDescription& md);

/// Variable table, then each document preceded by a "---" delimiter line.
ContextDocument build_context_document(const ModelDescription& md,
                                       const std::vector<SourceDocument>& docs);

}  // namespace fmutest::model
