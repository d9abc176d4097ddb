#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fqlat/fqlat.h"

namespace {

int exit_code(fqlat_status s) {
  switch (s) {
    case FQLAT_OK: return 0;
    case FQLAT_ERR_ARGUMENT:
    case FQLAT_ERR_DOMAIN:
    case FQLAT_ERR_TABLE_GAP: return 2;
    case FQLAT_ERR_IO:
    case FQLAT_ERR_CACHE: return 3;
    default: return 1;
  }
}

int report_error(fqlat_status s) {
  std::cerr << "error: " << fqlat_last_error() << "\n";
  return exit_code(s);
}

// Takes ownership of the C string; by reference so it is read after the call that fills it.
int emit(fqlat_status s, char*& text, const std::string& out_path = "") {
  if (s != FQLAT_OK) return report_error(s);
  std::string body = text;
  fqlat_string_free(text);
  if (!body.empty() && body.back() != '\n') body += '\n';
  if (out_path.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << body)) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 3;
  }
  return 0;
}

struct FieldHandle {
  fqlat_field* k = nullptr;
  ~FieldHandle() { fqlat_field_free(k); }
};

fqlat_format parse_format(const std::string& f) { return f == "markdown" ? FQLAT_FORMAT_MARKDOWN : FQLAT_FORMAT_JSON; }

std::string sibling(const std::string& path, const std::string& name) {
  std::filesystem::path p(path);
  return (p.has_parent_path() ? p.parent_path() / name : std::filesystem::path(name)).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commensurability classes of arithmetic lattices over real quadratic fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fqlat_version()));

  long d = 0;
  std::string ramified, s, out_path, report_path, format = "json", cache, table, ds, recon_path, classes_in;
  long max_d = 1285, q = 1;
  int degree = 0, jobs = 1;
  bool rebuild = false;

  auto* field = app.add_subcommand("field", "Field invariants");
  field->add_option("--d", d, "Fundamental discriminant")->required();

  auto* screen = app.add_subcommand("screen", "Integrality screen");
  screen->add_option("--max-d", max_d, "Largest discriminant")->capture_default_str();

  auto* t1 = app.add_subcommand("table1", "Invariants of the screened fields");
  t1->add_option("--format", format)->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();

  auto* chi = app.add_subcommand("chi", "Euler characteristics");
  chi->add_option("--d", d)->required();
  chi->add_option("--ramified", ramified, "Places of d_B, e.g. 2,41+")->required();
  chi->add_option("--s", s, "Places of S");

  auto* enumerate = app.add_subcommand("enumerate", "Candidate d_B and S");
  enumerate->add_option("--d", d)->required();

  auto* torsion = app.add_subcommand("torsion", "Torsion orders");
  torsion->add_option("--d", d)->required();
  torsion->add_option("--ramified", ramified)->required();
  torsion->add_option("--s", s);

  auto* classify = app.add_subcommand("classify", "Classify all screened fields");
  classify->add_option("--out", out_path, "classes.json path")->default_val("classes.json");
  classify->add_option("--discriminants", ds, "Comma separated subset");
  classify->add_option("--reconciliation", recon_path, "Defaults to reconciliation.md next to --out");
  classify->add_option("--jobs", jobs)->check(CLI::PositiveNumber)->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Degree and root discriminant bounds");
  bounds->add_option("--degree", degree, "Single degree; omit for the full report");
  bounds->add_option("--q", q, "[k'_B:k]")->capture_default_str();
  bounds->add_option("--table", table, "Root discriminant TSV");
  bounds->add_option("--format", format)->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();

  auto* report = app.add_subcommand("report", "Markdown report");
  report->add_option("--classes", classes_in, "Existing classes.json; classified afresh when omitted");
  report->add_option("--out", report_path, "Report path; stdout when omitted");
  report->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  for (auto* sub : {classify, report}) {
    sub->add_option("--cache-dir", cache, "Overrides FQLAT_CACHE_DIR");
    sub->add_flag("--rebuild-cache", rebuild, "Recompute and rewrite cache entries");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  char* text = nullptr;
  fqlat_status st;

  if (field->parsed() || chi->parsed() || enumerate->parsed() || torsion->parsed()) {
    FieldHandle h;
    if ((st = fqlat_field_new(d, &h.k)) != FQLAT_OK) return report_error(st);
    if (field->parsed()) return emit(fqlat_field_info(h.k, &text), text);
    if (chi->parsed()) return emit(fqlat_chi(h.k, ramified.c_str(), s.c_str(), &text), text);
    if (enumerate->parsed()) return emit(fqlat_enumerate(h.k, &text), text);
    return emit(fqlat_torsion(h.k, ramified.c_str(), s.c_str(), &text), text);
  }
  if (screen->parsed()) return emit(fqlat_screen(max_d, &text), text);
  if (t1->parsed()) return emit(fqlat_table1(parse_format(format), &text), text);
  if (bounds->parsed())
    return emit(fqlat_bounds(degree, q, table.empty() ? nullptr : table.c_str(), parse_format(format), &text), text);

  fqlat_classification* c = nullptr;
  if (report->parsed() && !classes_in.empty()) {
    std::ifstream in(classes_in);
    if (!in) {
      std::cerr << "error: cannot open " << classes_in << "\n";
      return 3;
    }
    std::string doc((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    st = fqlat_classification_load(doc.c_str(), &c);
  } else {
    st = fqlat_classify(ds.c_str(), cache.empty() ? nullptr : cache.c_str(), rebuild, jobs, &c);
  }
  if (st != FQLAT_OK) return report_error(st);
  int rc;
  if (classify->parsed()) {
    rc = emit(fqlat_classification_json(c, &text), text, out_path);
    if (rc == 0) {
      text = nullptr;
      rc = emit(fqlat_classification_reconciliation(c, &text), text,
                recon_path.empty() ? sibling(out_path, "reconciliation.md") : recon_path);
    }
    if (rc == 0) std::cout << fqlat_classification_counted(c) << " classes counted\n";
  } else {
    rc = emit(fqlat_classification_report(c, &text), text, report_path);
  }
  fqlat_classification_free(c);
  return rc;
}
