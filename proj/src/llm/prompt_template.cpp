#include "fmutest/llm/prompt_template.hpp"

#include <cctype>
#include <regex>
#include <sstream>

#include "fmutest/error.hpp"
#include "fmutest/io.hpp"

namespace fmutest::llm {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Calls on_text for literal runs and on_name for placeholders.
template <class Text, class Name>
void scan(std::string_view s, Text on_text, Name on_name) {
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '{') {
      if (i + 1 < s.size() && s[i + 1] == '{') {
        on_text("{");
        i += 2;
        continue;
      }
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j == i + 1 || j >= s.size() || s[j] != '}') {
        throw Error(Errc::TemplateSyntax,
                    "unbalanced '{' at offset " + std::to_string(i) + " in template");
      }
      on_name(std::string(s.substr(i + 1, j - i - 1)));
      i = j + 1;
    } else if (c == '}') {
      if (i + 1 < s.size() && s[i + 1] == '}') {
        on_text("}");
        i += 2;
        continue;
      }
      throw Error(Errc::TemplateSyntax,
                  "unbalanced '}' at offset " + std::to_string(i) + " in template");
    } else {
      std::size_t j = i;
      while (j < s.size() && s[j] != '{' && s[j] != '}') ++j;
      on_text(s.substr(i, j - i));
      i = j;
    }
  }
}

}  // namespace

const std::set<std::string>& known_placeholders() {
  static const std::set<std::string> names{"system_name", "merged_doc",  "constraints_json",
                                           "goals_brief", "sim_start",   "sim_stop",
                                           "types_str",   "avoid_text",  "avoid_hint"};
  return names;
}

PromptTemplate parse_template(Phase phase, std::string_view text, std::string version) {
  PromptTemplate tpl;
  tpl.phase = phase;
  tpl.version = std::move(version);
  tpl.source = std::string(text);

  scan(
      text, [](std::string_view) {},
      [&](const std::string& name) {
        if (known_placeholders().count(name) == 0) {
          throw Error(Errc::TemplateSyntax, "unknown placeholder '{" + name + "}'");
        }
        tpl.placeholders.insert(name);
      });

  static const std::regex header(R"(^\s*\d+\.\s+([A-Za-z][^:]*?)\s*:?\s*$)");
  std::istringstream in(tpl.source);
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, header)) {
      tpl.sections.push_back({m[1].str(), {}});
    } else if (!tpl.sections.empty()) {
      tpl.sections.back().body += line;
      tpl.sections.back().body += '\n';
    }
  }
  if (tpl.sections.empty() || tpl.sections.front().label != "Role") {
    throw Error(Errc::TemplateSyntax, "template must open with a \"1. Role:\" section");
  }
  return tpl;
}

PromptTemplate load_template(const std::filesystem::path& dir, Phase phase,
                             const std::string& version) {
  const auto path = dir / (std::string(to_string(phase)) + "." + version + ".txt");
  return parse_template(phase, read_file(path), version);
}

std::string render_prompt(const PromptTemplate& tpl,
                          const std::map<std::string, std::string>& bindings) {
  for (const auto& name : tpl.placeholders) {
    if (bindings.find(name) == bindings.end()) {
      throw Error(Errc::MissingBinding, name);
    }
  }
  std::string out;
  out.reserve(tpl.source.size());
  scan(
      tpl.source, [&](std::string_view t) { out.append(t); },
      [&](const std::string& name) { out += bindings.at(name); });
  return out;
}

}  // namespace fmutest::llm
