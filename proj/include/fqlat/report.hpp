#pragma once

#include <string>
#include <vector>

#include "fqlat/bounds.hpp"
#include "fqlat/classifier.hpp"
#include "json.hpp"

namespace fqlat {

using nlohmann::json;

// "[5, v2.v41+, {}, 2]"
std::string class_label(long d, const PlaceSet& ramified, const PlaceSet& s, long index);

json class_json(const CandidateClass& c);
// Rows must come from class_json; they are sorted and counted here.
json classes_document(std::vector<json> rows);
json classes_document(const Classification& c);

struct TheoremComparison {
  std::string group;
  int engine_count = 0;
  int listed_count = 0;
  std::vector<std::string> engine_only;  // signatures, one entry per surplus class
  std::vector<std::string> listed_only;
  std::vector<std::string> index_mismatch;
  bool equal() const { return engine_only.empty() && listed_only.empty(); }
};
std::vector<TheoremComparison> compare_theorems(const json& doc, const ReferenceData& ref);

std::string table1_markdown(const std::vector<Table1Row>& rows);
std::string theorem_markdown(const json& doc, const ReferenceData& ref);
std::string reconciliation_markdown(const json& doc, const ReferenceData& ref);
std::string report_markdown(const json& doc, const ReferenceData& ref, const std::vector<Table1Row>& table1_rows);

json bounds_json(const BoundsReport& r);
std::string bounds_markdown(const BoundsReport& r);

// Write through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace fqlat
