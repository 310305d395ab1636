#include "fmutest/scenario/canonical.hpp"

#include "fmutest/digest.hpp"
#include "fmutest/format.hpp"
#include "fmutest/scenario/json_codec.hpp"

namespace fmutest::scenario {

namespace {

void dump_into(const nlohmann::json& v, std::string& out) {
  using nlohmann::json;
  switch (v.type()) {
    case json::value_t::null: out += "null"; break;
    case json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
    case json::value_t::number_integer: out += std::to_string(v.get<std::int64_t>()); break;
    case json::value_t::number_unsigned: out += std::to_string(v.get<std::uint64_t>()); break;
    case json::value_t::number_float: out += format_real(v.get<double>()); break;
    case json::value_t::string: out += json(v.get<std::string>()).dump(); break;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      // nlohmann::json keeps object keys in std::map order, i.e. sorted.
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case json::value_t::binary:
    case json::value_t::discarded: throw std::domain_error("value has no canonical form");
  }
}

nlohmann::json strip_identity(nlohmann::json j) {
  j.erase("id");
  j.erase("review_status");
  return j;
}

}  // namespace

std::string canonical_dump(const nlohmann::json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

CanonicalDigest digest_json(const nlohmann::json& value) {
  return {sha256_hex(canonical_dump(value))};
}

CanonicalDigest canonical_digest(const ScenarioGoal& goal) {
  return digest_json(strip_identity(to_json(goal)));
}

CanonicalDigest canonical_digest(const ScenarioPlan& plan) {
  return digest_json(strip_identity(to_json(plan)));
}

CanonicalDigest canonical_digest(const ConstraintSet& constraints) {
  return digest_json(to_json(constraints));
}

}  // namespace fmutest::scenario
