#include "fmutest/error.hpp"

namespace fmutest {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::MissingVariables: return "MissingVariables";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::InvalidBounds: return "InvalidBounds";
    case Errc::MissingBinding: return "MissingBinding";
    case Errc::TemplateSyntax: return "TemplateSyntax";
    case Errc::FixtureMiss: return "FixtureMiss";
    case Errc::ProviderError: return "ProviderError";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::Rejection: return "Rejection";
    case Errc::UnknownItem: return "UnknownItem";
    case Errc::IllegalTransition: return "IllegalTransition";
    case Errc::InvalidEdit: return "InvalidEdit";
    case Errc::EmptyRun: return "EmptyRun";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::OutOfWindow: return "OutOfWindow";
    case Errc::SimError: return "SimError";
    case Errc::CapabilityMismatch: return "CapabilityMismatch";
    case Errc::AdapterNotBundled: return "AdapterNotBundled";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::NonConstantTarget: return "NonConstantTarget";
    case Errc::MissingOutput: return "MissingOutput";
    case Errc::DegenerateBounds: return "DegenerateBounds";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NoPassingScenarios: return "NoPassingScenarios";
    case Errc::StageGateViolation: return "StageGateViolation";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

std::string Rejection::join(const std::vector<std::string>& reasons) {
  std::string out = "rejected: ";
  for (std::size_t i = 0; i < reasons.size(); ++i) {
    if (i != 0) out += "; ";
    out += reasons[i];
  }
  return out;
}

}  // namespace fmutest
