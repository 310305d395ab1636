#include "fmutest/model/model_description.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <sstream>
#include <unordered_set>

#include "fmutest/error.hpp"

namespace fmutest::model {

namespace pt = boost::property_tree;

std::string_view to_string(Causality c) noexcept {
  switch (c) {
    case Causality::Input: return "input";
    case Causality::Output: return "output";
    case Causality::Parameter: return "parameter";
    case Causality::Local: return "local";
  }
  return "local";
}

std::string_view to_string(Variability v) noexcept {
  switch (v) {
    case Variability::Continuous: return "continuous";
    case Variability::Discrete: return "discrete";
    case Variability::Constant: return "constant";
  }
  return "continuous";
}

const ModelVariable* ModelDescription::find(std::string_view name) const noexcept {
  for (const auto& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::vector<const ModelVariable*> ModelDescription::with_causality(Causality c) const {
  std::vector<const ModelVariable*> out;
  for (const auto& v : variables) {
    if (v.causality == c) out.push_back(&v);
  }
  return out;
}

bool ModelDescription::testable() const {
  return !with_causality(Causality::Input).empty() &&
         !with_causality(Causality::Output).empty();
}

namespace {

std::optional<std::string> attr(const pt::ptree& node, const char* key) {
  const auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  if (auto v = attrs->get_optional<std::string>(key)) return *v;
  return std::nullopt;
}

std::optional<double> real_attr(const pt::ptree& node, const char* key,
                                const std::string& var_name) {
  const auto text = attr(node, key);
  if (!text) return std::nullopt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(*text, &pos);
    if (pos != text->size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::MalformedXml,
                "variable '" + var_name + "': attribute " + key + "=\"" + *text +
                    "\" is not a number");
  }
}

const pt::ptree* find_model_variables(const pt::ptree& node) {
  for (const auto& [key, child] : node) {
    if (key == "ModelVariables") return &child;
  }
  for (const auto& [key, child] : node) {
    if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
    if (const auto* found = find_model_variables(child)) return found;
  }
  return nullptr;
}

Causality parse_causality(const std::string& text, const std::string& name,
                          std::vector<std::string>& warnings) {
  if (text == "input") return Causality::Input;
  if (text == "output") return Causality::Output;
  if (text == "parameter") return Causality::Parameter;
  if (text == "local") return Causality::Local;
  warnings.push_back("variable '" + name + "': causality \"" + text + "\" mapped to local");
  return Causality::Local;
}

Variability parse_variability(const std::string& text, const std::string& name,
                              std::vector<std::string>& warnings) {
  if (text == "continuous") return Variability::Continuous;
  if (text == "discrete") return Variability::Discrete;
  if (text == "constant" || text == "fixed" || text == "tunable") return Variability::Constant;
  warnings.push_back("variable '" + name + "': variability \"" + text +
                     "\" mapped to continuous");
  return Variability::Continuous;
}

}  // namespace

ModelDescription parse_model_description(std::string_view xml_bytes) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml_bytes)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(Errc::MalformedXml, std::string("modelDescription is not well-formed: ") +
                                        e.message() + " (line " +
                                        std::to_string(e.line()) + ")");
  }

  ModelDescription md;
  if (auto root = tree.get_child_optional("fmiModelDescription")) {
    md.model_name = attr(*root, "modelName").value_or("");
  }

  const pt::ptree* vars = find_model_variables(tree);
  if (vars == nullptr) throw Error(Errc::MissingVariables, "no ModelVariables element");

  std::unordered_set<std::string> seen;
  for (const auto& [key, node] : *vars) {
    if (key != "ScalarVariable") continue;
    ModelVariable v;
    v.name = attr(node, "name").value_or("");
    if (v.name.empty()) throw Error(Errc::MalformedXml, "ScalarVariable without a name");
    if (!seen.insert(v.name).second) {
      throw Error(Errc::DuplicateName, "duplicate variable name '" + v.name + "'");
    }
    v.causality = parse_causality(attr(node, "causality").value_or("local"), v.name, md.warnings);
    v.variability =
        parse_variability(attr(node, "variability").value_or("continuous"), v.name, md.warnings);
    v.description = attr(node, "description").value_or("");
    v.initial = attr(node, "initial");
    if (const auto vr = attr(node, "valueReference")) {
      std::uint32_t parsed = 0;
      const auto* first = vr->data();
      const auto* last = vr->data() + vr->size();
      const auto [ptr, ec] = std::from_chars(first, last, parsed);
      if (ec != std::errc{} || ptr != last) {
        throw Error(Errc::MalformedXml,
                    "variable '" + v.name + "': bad valueReference \"" + *vr + "\"");
      }
      v.value_reference = parsed;
    }
    for (const auto& [type_key, typed] : node) {
      if (type_key != "Real" && type_key != "Integer") continue;
      v.start = real_attr(typed, "start", v.name);
      v.min = real_attr(typed, "min", v.name);
      v.max = real_attr(typed, "max", v.name);
      v.unit = attr(typed, "unit");
      break;
    }
    if (v.min && v.max && *v.min > *v.max) {
      throw Error(Errc::InvalidBounds, "variable '" + v.name + "': min > max");
    }
    md.variables.push_back(std::move(v));
  }
  return md;
}

}  // namespace fmutest::model
