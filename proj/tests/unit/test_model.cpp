#include <gtest/gtest.h>

#include "fmutest/digest.hpp"
#include "fmutest/error.hpp"
#include "fmutest/io.hpp"
#include "fmutest/model/context_document.hpp"
#include "fmutest/model/fmu_archive.hpp"
#include "fmutest/model/model_description.hpp"
#include "test_support.hpp"

using namespace fmutest;
using namespace fmutest::model;

namespace {

constexpr const char* kExcerpt = R"(<ModelVariables>
  <ScalarVariable causality="input" description="Temperature of the cooling liquid at the heat exchanger inlet." name="temperature_cooling_liquid_in" valueReference="0" variability="continuous"> <Real max="100" min="0" start="0" unit="degC"/>
  </ScalarVariable>
  <ScalarVariable causality="output" description="Temperature of the cooling liquid at the outlet of the heat exchanger." initial="calculated" name="temperature_cooling_liquid_out" valueReference="4" variability="continuous"> <Real max="100" min="0" unit="degC"/>
  </ScalarVariable>
</ModelVariables>)";

Errc error_of(std::string_view xml) {
  try {
    (void)parse_model_description(xml);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

ModelDescription bundled() {
  return parse_model_description(load_model_description_bytes(fmutest_test::loc_dir() / "loc.fmu"));
}

}  // namespace

TEST(ParseModelDescription, ExcerptInputVariable) {
  const auto md = parse_model_description(kExcerpt);
  ASSERT_EQ(md.variables.size(), 2u);
  const auto& v = md.variables[0];
  EXPECT_EQ(v.name, "temperature_cooling_liquid_in");
  EXPECT_EQ(v.causality, Causality::Input);
  EXPECT_EQ(v.variability, Variability::Continuous);
  EXPECT_EQ(v.value_reference, 0u);
  EXPECT_EQ(v.min, 0.0);
  EXPECT_EQ(v.max, 100.0);
  EXPECT_EQ(v.start, 0.0);
  EXPECT_EQ(v.unit, "degC");
  EXPECT_EQ(v.description, "Temperature of the cooling liquid at the heat exchanger inlet.");
}

TEST(ParseModelDescription, ExcerptOutputVariable) {
  const auto md = parse_model_description(kExcerpt);
  const auto* v = md.find("temperature_cooling_liquid_out");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->causality, Causality::Output);
  EXPECT_EQ(v->initial, "calculated");
  EXPECT_FALSE(v->start.has_value());
  EXPECT_EQ(v->value_reference, 4u);
  EXPECT_TRUE(md.testable());
}

TEST(ParseModelDescription, EmptyVariableList) {
  const auto md = parse_model_description("<fmiModelDescription modelName=\"M\"><ModelVariables/></fmiModelDescription>");
  EXPECT_TRUE(md.variables.empty());
  EXPECT_FALSE(md.testable());
}

TEST(ParseModelDescription, Errors) {
  EXPECT_EQ(error_of("<ModelVariables><ScalarVariable"), Errc::MalformedXml);
  EXPECT_EQ(error_of("<fmiModelDescription modelName=\"M\"/>"), Errc::MissingVariables);
  EXPECT_EQ(error_of(R"(<ModelVariables>
      <ScalarVariable name="a" causality="input" valueReference="0"><Real/></ScalarVariable>
      <ScalarVariable name="a" causality="output" valueReference="1"><Real/></ScalarVariable>
    </ModelVariables>)"),
            Errc::DuplicateName);
  EXPECT_EQ(error_of(R"(<ModelVariables>
      <ScalarVariable name="a" causality="input" valueReference="0"><Real min="2" max="1"/></ScalarVariable>
    </ModelVariables>)"),
            Errc::InvalidBounds);
}

TEST(ParseModelDescription, UnknownCausalityBecomesLocalWithWarning) {
  const auto md = parse_model_description(R"(<ModelVariables>
      <ScalarVariable name="a" causality="exotic" valueReference="0"><Real/></ScalarVariable>
    </ModelVariables>)");
  ASSERT_EQ(md.variables.size(), 1u);
  EXPECT_EQ(md.variables[0].causality, Causality::Local);
  EXPECT_FALSE(md.warnings.empty());
}

TEST(ParseModelDescription, UnitPreservedVerbatim) {
  const auto md = parse_model_description(R"(<ModelVariables>
      <ScalarVariable name="a" causality="input" valueReference="0"><Real unit="kg/s " min="0"/></ScalarVariable>
    </ModelVariables>)");
  EXPECT_EQ(md.variables[0].unit, "kg/s ");
  EXPECT_FALSE(md.variables[0].max.has_value());
}

TEST(BundledModel, FourInputsFourOutputsInDocumentOrder) {
  const auto md = bundled();
  EXPECT_EQ(md.model_name, "LOC");
  EXPECT_EQ(md.with_causality(Causality::Input).size(), 4u);
  EXPECT_EQ(md.with_causality(Causality::Output).size(), 4u);
  const std::vector<std::string> order{"temperature_cooling_liquid_in", "mass_flow_cooling_liquid_in",
                                       "setpoint_temperature_oil",      "engine_load",
                                       "temperature_cooling_liquid_out", "mass_flow_cooling_liquid_out",
                                       "temperature_oil",               "position_valve"};
  ASSERT_EQ(md.variables.size(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    EXPECT_EQ(md.variables[i].name, order[i]);
    EXPECT_EQ(md.variables[i].value_reference, i);
  }
}

TEST(FmuArchive, ArchiveAndPlainXmlAgree) {
  const auto from_zip = load_model_description_bytes(fmutest_test::loc_dir() / "loc.fmu");
  const auto plain = read_file(fmutest_test::loc_dir() / "modelDescription.xml");
  EXPECT_EQ(from_zip, plain);
  EXPECT_TRUE(looks_like_zip(read_file(fmutest_test::loc_dir() / "loc.fmu")));
  EXPECT_FALSE(looks_like_zip(plain));
}

TEST(FmuArchive, MissingMemberAndBadBytes) {
  const auto zip = read_file(fmutest_test::loc_dir() / "loc.fmu");
  EXPECT_FALSE(read_zip_member(zip, "binaries/none.so").has_value());
  EXPECT_THROW((void)read_zip_member("not a zip at all", "modelDescription.xml"), Error);
}

TEST(ContextDocument, VariableTableThenDocuments) {
  const auto md = bundled();
  const SourceDocument doc{"loc-spec.md", "LOC behaviour notes\n"};
  const auto ctx = build_context_document(md, {doc});
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < ctx.merged_text.size()) {
    const auto end = ctx.merged_text.find('\n', pos);
    lines.push_back(ctx.merged_text.substr(pos, end - pos));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  ASSERT_GE(lines.size(), 10u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(lines[i].rfind(md.variables[i].name + "\t", 0), 0u) << lines[i];
  }
  EXPECT_EQ(lines[8], "---");
  EXPECT_NE(ctx.merged_text.find(doc.text), std::string::npos);
  ASSERT_EQ(ctx.source_manifest.size(), 2u);
  EXPECT_EQ(ctx.source_manifest[0].source, kVariableTableSource);
  EXPECT_EQ(ctx.source_manifest[1].source, "loc-spec.md");
  EXPECT_EQ(ctx.source_manifest[1].byte_length, doc.text.size());
  EXPECT_EQ(ctx.source_manifest[1].digest, sha256_hex(doc.text));
}

TEST(ContextDocument, NoDocumentsGivesTableOnly) {
  const auto md = bundled();
  const auto ctx = build_context_document(md, {});
  EXPECT_EQ(ctx.merged_text, render_variable_table(md));
  EXPECT_EQ(ctx.source_manifest.size(), 1u);
}

TEST(ContextDocument, Deterministic) {
  const auto md = bundled();
  const std::vector<SourceDocument> docs{{"a.md", "alpha"}, {"b.md", "beta"}};
  const auto x = build_context_document(md, docs);
  const auto y = build_context_document(md, docs);
  EXPECT_EQ(x.merged_text, y.merged_text);
  ASSERT_EQ(x.source_manifest.size(), y.source_manifest.size());
  for (std::size_t i = 0; i < x.source_manifest.size(); ++i) {
    EXPECT_EQ(x.source_manifest[i].digest, y.source_manifest[i].digest);
  }
  EXPECT_LT(x.merged_text.find("alpha"), x.merged_text.find("beta"));
}

TEST(Digest, KnownSha256Vector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
