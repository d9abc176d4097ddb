#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fqlat/cache.hpp"
#include "fqlat/fqlat.h"
#include "fqlat/report.hpp"

using namespace fqlat;
namespace fs = std::filesystem;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  fqlat_string_free(s);
  return out;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  int n = 0;
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

int cli(const std::string& args) {
  std::string cmd = std::string(FQLAT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const char* name) {
  fs::path p = fs::temp_directory_path() / ("fqlat_test_" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

}  // namespace

TEST_CASE("class labels") {
  PlaceSet r = {parse_place("2"), parse_place("41+")};
  CHECK(class_label(5, r, {}, 2) == "[5, v2.v41+, {}, 2]");
  CHECK(class_label(5, {parse_place("2"), parse_place("5")}, {parse_place("3")}, 4) == "[5, v2.v5, {v3}, 4]");
}

TEST_CASE("empty report has headers only") {
  json doc = classes_document(std::vector<json>{});
  CHECK(doc["counted"] == 0);
  std::string md = report_markdown(doc, load_reference(), {});
  CHECK(md.find("# Classification report") != std::string::npos);
  CHECK(count_lines_starting(md, "| [") == 0);
}

TEST_CASE("theorem section for Q(sqrt 2)") {
  json doc = classify_cached({8}, scratch("cache8").string(), true);
  CHECK(doc["counted"] == 8);
  std::string md = theorem_markdown(doc, load_reference());
  CHECK(md.find("## Theorem d8") != std::string::npos);
  CHECK(md.find("8 classes, conjugates counted separately.") != std::string::npos);
}

TEST_CASE("table1 markdown") {
  std::vector<Table1Row> rows;
  for (long d : integrality_screen(1285)) rows.push_back(table1(d));
  std::string md = table1_markdown(rows);
  CHECK(count_lines_starting(md, "| ") == 23 + 1);  // header row
}

TEST_CASE("cache round trip and corruption") {
  fs::path dir = scratch("cache5");
  fs::remove_all(dir);
  json a = classify_cached({5}, dir.string(), false);
  CHECK(fs::exists(dir / "d5.json"));
  json b = classify_cached({5}, dir.string(), false);
  CHECK(a == b);
  std::ofstream(dir / "d5.json") << "{not json";
  CHECK_THROWS_AS(cache_load(dir.string(), 5), CacheCorrupt);
  json c = classify_cached({5}, dir.string(), true);
  CHECK(c == a);
  std::ofstream(dir / "d5.json") << R"({"schema": 999, "rows": []})";
  CHECK_FALSE(cache_load(dir.string(), 5).has_value());
}

TEST_CASE("C API field and chi") {
  fqlat_field* k = nullptr;
  REQUIRE(fqlat_field_new(5, &k) == FQLAT_OK);
  char* out = nullptr;
  REQUIRE(fqlat_chi(k, "2,41+", nullptr, &out) == FQLAT_OK);
  CHECK(take(out) == R"({"chi1":"2/1","chiN":"1/2"})");
  REQUIRE(fqlat_chi(k, "2,5", "3", &out) == FQLAT_OK);
  json j = json::parse(take(out));
  CHECK(j["chiS"] == "1/4");
  CHECK(j["certificate"] == "3");
  REQUIRE(fqlat_field_info(k, &out) == FQLAT_OK);
  CHECK(json::parse(take(out))["h"] == 1);
  fqlat_field_free(k);
}

TEST_CASE("C API error codes") {
  fqlat_field* k = nullptr;
  CHECK(fqlat_field_new(12 * 4, &k) == FQLAT_ERR_DOMAIN);
  CHECK(std::string(fqlat_last_error()).size() > 0);
  CHECK(fqlat_field_new(5, nullptr) == FQLAT_ERR_ARGUMENT);
  REQUIRE(fqlat_field_new(5, &k) == FQLAT_OK);
  char* out = nullptr;
  CHECK(fqlat_chi(k, "2", nullptr, &out) == FQLAT_ERR_DOMAIN);
  CHECK(fqlat_chi(k, "2,x", nullptr, &out) != FQLAT_OK);
  CHECK(fqlat_chi(nullptr, "2,5", nullptr, &out) == FQLAT_ERR_ARGUMENT);
  fqlat_field_free(k);
  fs::path gap = scratch("gap.tsv");
  std::ofstream(gap) << "n\tbound\tsource\n2\t2.2\tx\n3\t3.6\tx\n";
  CHECK(fqlat_bounds(0, 1, gap.c_str(), FQLAT_FORMAT_JSON, &out) == FQLAT_ERR_TABLE_GAP);
  CHECK(fqlat_bounds(0, 1, "/nonexistent.tsv", FQLAT_FORMAT_JSON, &out) == FQLAT_ERR_IO);
  fqlat_classification* c = nullptr;
  CHECK(fqlat_classification_load("{broken", &c) != FQLAT_OK);
  CHECK(fqlat_classify("48", nullptr, 0, 1, &c) == FQLAT_ERR_DOMAIN);
  CHECK(fqlat_classify("5,x", nullptr, 0, 1, &c) != FQLAT_OK);
}

TEST_CASE("C API classification round trip") {
  fqlat_classification* c = nullptr;
  std::string dir = scratch("cache12").string();
  REQUIRE(fqlat_classify("5,12", dir.c_str(), 0, 2, &c) == FQLAT_OK);
  int counted = fqlat_classification_counted(c);
  char* out = nullptr;
  REQUIRE(fqlat_classification_json(c, &out) == FQLAT_OK);
  std::string doc = take(out);
  fqlat_classification_free(c);
  REQUIRE(fqlat_classification_load(doc.c_str(), &c) == FQLAT_OK);
  CHECK(fqlat_classification_counted(c) == counted);
  REQUIRE(fqlat_classification_reconciliation(c, &out) == FQLAT_OK);
  CHECK(take(out).find("## Reconciliation") != std::string::npos);
  fqlat_classification_free(c);
}

TEST_CASE("CLI exit codes") {
  CHECK(cli("field --d 5") == 0);
  CHECK(cli("chi --d 5 --ramified 2,41+") == 0);
  CHECK(cli("field --d 48") == 2);
  CHECK(cli("chi --d 5 --ramified 2") == 2);
  CHECK(cli("no-such-command") == 2);
  fs::path gap = scratch("gap_cli.tsv");
  std::ofstream(gap) << "n\tbound\tsource\n2\t2.2\tx\n";
  CHECK(cli("bounds --table " + gap.string()) == 2);
  CHECK(cli("bounds --table /nonexistent.tsv") == 3);
  CHECK(cli("report --classes /nonexistent.json") == 3);
  fs::path out = scratch("cli") / "classes.json";
  CHECK(cli("classify --discriminants 8 --cache-dir " + (out.parent_path() / "cache").string() + " --out " +
            out.string()) == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out.parent_path() / "reconciliation.md"));
  // report must not touch the classify output
  std::string cmd = "cd " + out.parent_path().string() + " && " + FQLAT_CLI_PATH + " report --classes classes.json > r.md";
  CHECK(std::system(cmd.c_str()) == 0);
  std::ifstream in(out);
  CHECK(json::parse(in, nullptr, false).is_object());
  std::ifstream rin(out.parent_path() / "r.md");
  std::string first;
  std::getline(rin, first);
  CHECK(first == "# Classification report");
}
