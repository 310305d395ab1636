#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fmutest/phase.hpp"

namespace fmutest::llm {

struct TemplateSection {
  std::string label;
  std::string body;
};

/// Grammar: `{name}` is a placeholder, `{{` and `}}` are literal braces, any
/// other brace is a syntax error. Sections start at lines like "1. Role:".
struct PromptTemplate {
  Phase phase = Phase::Constraints;
  std::string version = "v1";
  std::vector<TemplateSection> sections;
  std::set<std::string> placeholders;
  std::string source;
};

const std::set<std::string>& known_placeholders();

/// Throws Error{TemplateSyntax} for malformed braces, unknown placeholder
/// names, or a first section other than Role.
PromptTemplate parse_template(Phase phase, std::string_view text, std::string version = "v1");

/// Reads <dir>/<phase>.<version>.txt.
PromptTemplate load_template(const std::filesystem::path& dir, Phase phase,
                             const std::string& version = "v1");

/// Substitutes every placeholder verbatim. Throws Error{MissingBinding}
/// naming the first absent placeholder.
std::string render_prompt(const PromptTemplate& tpl,
                          const std::map<std::string, std::string>& bindings);

}  // namespace fmutest::llm
