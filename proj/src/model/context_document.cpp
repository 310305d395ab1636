#include "fmutest/model/context_document.hpp"

#include "fmutest/digest.hpp"
#include "fmutest/format.hpp"

namespace fmutest::model {

namespace {

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace

std::string render_variable_table(const ModelDescription& md) {
  std::string out;
  for (const auto& v : md.variables) {
    out += v.name;
    out += '\t';
    out += to_string(v.causality);
    out += '\t';
    out += opt_real(v.min);
    out += '\t';
    out += opt_real(v.max);
    out += '\t';
    out += v.unit.value_or("");
    out += '\t';
    out += v.description;
    out += '\n';
  }
  return out;
}

ContextDocument build_context_document(const ModelDescription& md,
                                       const std::vector<SourceDocument>& docs) {
  ContextDocument ctx;
  const std::string table = render_variable_table(md);
  ctx.merged_text = table;
  ctx.source_manifest.push_back({kVariableTableSource, table.size(), sha256_hex(table)});
  for (const auto& doc : docs) {
    ctx.merged_text += kDocumentDelimiter;
    ctx.merged_text += '\n';
    ctx.merged_text += doc.text;
    if (!doc.text.empty() && doc.text.back() != '\n') ctx.merged_text += '\n';
    ctx.source_manifest.push_back({doc.name, doc.text.size(), sha256_hex(doc.text)});
  }
  return ctx;
}

}  // namespace fmutest::model
