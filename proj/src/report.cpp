#include "fqlat/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fqlat {
namespace {

std::string places_text(const PlaceSet& set, const char* sep) {
  std::string out;
  for (size_t i = 0; i < set.size(); ++i) out += (i ? sep : "") + std::string("v") + to_string(set[i]);
  return out;
}

json place_list(const PlaceSet& set) {
  json out = json::array();
  for (const Place& v : set) out.push_back(to_string(v));
  return out;
}

PlaceSet places_of(const json& arr) {
  PlaceSet out;
  for (const auto& s : arr) out.push_back(parse_place(s.get<std::string>()));
  return out;
}

std::string sig_text(const json& row) {
  return to_string(Signature{row.at("d").get<long>(), signature_of(places_of(row.at("ramified"))),
                             signature_of(places_of(row.at("s")))});
}

std::string row_label(const json& row) {
  return class_label(row.at("d").get<long>(), places_of(row.at("ramified")), places_of(row.at("s")),
                     row.at("index").get<long>());
}

std::string orders_text(const json& torsion) {
  std::string out;
  for (const auto& m : torsion.at("orders")) out += (out.empty() ? "" : ",") + std::to_string(m.get<int>());
  return out.empty() ? "none" : out;
}

// What the engine says about a listed signature it does not count.
std::string listed_evidence(const Signature& sig, const json& doc) {
  std::string out;
  for (const auto& row : doc.at("classes")) {
    if (sig_text(row) != to_string(sig)) continue;
    out += (out.empty() ? "" : "; ") + row_label(row) + " " + row.at("status").get<std::string>() + ": " +
           row.at("reason").get<std::string>();
  }
  if (!out.empty()) return out;
  // not produced at all: evaluate chi(N Gamma) for every labelling of the primes
  Field k = field_from_discriminant(sig.d);
  std::vector<PlaceSet> sets{{}};
  for (size_t i = 0; i < sig.ramified.size(); ++i) {
    long p = sig.ramified[i];
    if (i > 0 && sig.ramified[i - 1] == p) continue;
    size_t mult = std::count(sig.ramified.begin(), sig.ramified.end(), p);
    std::vector<Place> over = k.places_over(p);
    std::vector<PlaceSet> next;
    for (const PlaceSet& base : sets) {
      if (mult == over.size()) {
        PlaceSet x = base;
        x.insert(x.end(), over.begin(), over.end());
        next.push_back(x);
      } else if (mult == 1) {
        for (const Place& v : over) {
          PlaceSet x = base;
          x.push_back(v);
          next.push_back(x);
        }
      }
    }
    sets = next;
  }
  for (PlaceSet r : sets) {
    r = sorted(r);
    std::string item = "[" + places_text(r, ".") + "] ";
    try {
      item += "chi(N Gamma)=" + chi_normalizer(k, r).get_str();
      if (!sig.s.empty()) item += " (S not evaluated)";
    } catch (const DomainError& e) {
      item += e.what();
    }
    out += (out.empty() ? "" : "; ") + item;
  }
  return "not produced by the enumeration: " + out;
}

std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

}  // namespace

std::string class_label(long d, const PlaceSet& ramified, const PlaceSet& s, long index) {
  return "[" + std::to_string(d) + ", " + places_text(ramified, ".") + ", {" + places_text(s, ",") + "}, " +
         std::to_string(index) + "]";
}

json class_json(const CandidateClass& c) {
  json row;
  row["d"] = c.d;
  row["ramified"] = place_list(c.ramified);
  row["s"] = place_list(c.s);
  row["index"] = c.index;
  row["m"] = c.m;
  row["label"] = class_label(c.d, c.ramified, c.s, c.index);
  row["chi"] = c.chi.get_str();
  row["chi_normalizer"] = c.chi_normalizer.get_str();
  row["chi_norm_one"] = c.chi_norm_one.get_str();
  row["exact_chi"] = c.exact_chi ? json(c.exact_chi->get_str()) : json(nullptr);
  if (c.certificate) {
    Field k = field_from_discriminant(c.d);
    row["certificate"] = k.format(*c.certificate);
  } else {
    row["certificate"] = nullptr;
  }
  json t;
  t["orders"] = json(std::vector<int>(c.torsion.orders.begin(), c.torsion.orders.end()));
  t["linked"] = json(std::vector<int>(c.torsion.linked.begin(), c.torsion.linked.end()));
  json w = json::object();
  for (const auto& [m, text] : c.torsion.witnesses) w[std::to_string(m)] = text;
  t["witnesses"] = w;
  row["torsion"] = t;
  row["h_order"] = c.h_order;
  row["status"] = to_string(c.status);
  row["reason"] = c.reason;
  row["witness"] = c.witness;
  row["counted"] = c.counted();
  row["conjugate"] = nullptr;
  return row;
}

json classes_document(std::vector<json> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const json& a, const json& b) { return a.at("d").get<long>() < b.at("d").get<long>(); });
  int counted = 0;
  for (const auto& r : rows) counted += r.at("counted").get<bool>() ? 1 : 0;
  json doc;
  doc["schema"] = 1;
  doc["counted"] = counted;
  doc["classes"] = rows;
  return doc;
}

json classes_document(const Classification& c) {
  std::vector<json> rows;
  for (const CandidateClass& x : c.classes) {
    json row = class_json(x);
    if (x.conjugate_of) row["conjugate"] = class_label(x.d, c.classes[*x.conjugate_of].ramified,
                                                       c.classes[*x.conjugate_of].s, x.index);
    rows.push_back(row);
  }
  return classes_document(rows);
}

std::vector<TheoremComparison> compare_theorems(const json& doc, const ReferenceData& ref) {
  std::vector<TheoremComparison> out;
  for (const TheoremList& t : ref.theorems) {
    TheoremComparison cmp;
    cmp.group = t.group;
    std::map<std::string, int> engine, listed;
    std::map<std::string, std::set<long>> engine_index;
    std::map<std::string, long> listed_index;
    for (const auto& row : doc.at("classes")) {
      long d = row.at("d").get<long>();
      if (std::find(t.fields.begin(), t.fields.end(), d) == t.fields.end() || !row.at("counted").get<bool>()) continue;
      std::string s = sig_text(row);
      ++engine[s];
      engine_index[s].insert(row.at("index").get<long>());
      ++cmp.engine_count;
    }
    for (const ListedClass& lc : t.classes) {
      listed[to_string(lc.key)] += lc.count;
      listed_index[to_string(lc.key)] = lc.index;
      cmp.listed_count += lc.count;
    }
    for (const auto& [s, n] : engine)
      for (int i = listed.count(s) ? listed[s] : 0; i < n; ++i) cmp.engine_only.push_back(s);
    for (const auto& [s, n] : listed) {
      for (int i = engine.count(s) ? engine[s] : 0; i < n; ++i) cmp.listed_only.push_back(s);
      if (engine.count(s))
        for (long idx : engine_index[s])
          if (idx != listed_index[s])
            cmp.index_mismatch.push_back(s + ": engine I=" + std::to_string(idx) + ", listed I=" +
                                         std::to_string(listed_index[s]));
    }
    out.push_back(cmp);
  }
  return out;
}

std::string table1_markdown(const std::vector<Table1Row>& rows) {
  std::ostringstream o;
  o << "## Field invariants\n\n";
  if (rows.empty()) return o.str();
  o << "| d | h | t | 2^alpha g(k,B) |\n|---:|---:|---:|---:|\n";
  for (const Table1Row& r : rows) o << "| " << r.d << " | " << r.h << " | " << r.t << " | " << r.g.get_str() << " |\n";
  o << "\n";
  return o.str();
}

std::string theorem_markdown(const json& doc, const ReferenceData& ref) {
  std::ostringstream o;
  for (const TheoremList& t : ref.theorems) {
    std::vector<const json*> rows;
    for (const auto& row : doc.at("classes")) {
      long d = row.at("d").get<long>();
      if (row.at("counted").get<bool>() && std::find(t.fields.begin(), t.fields.end(), d) != t.fields.end())
        rows.push_back(&row);
    }
    o << "## Theorem " << t.group << "\n\n";
    if (rows.empty()) continue;
    o << rows.size() << " classes, conjugates counted separately.\n\n";
    o << "| class | chi | status | construction |\n|---|---|---|---|\n";
    for (const json* r : rows)
      o << "| " << r->at("label").get<std::string>() << " | " << r->at("chi").get<std::string>() << " | "
        << r->at("status").get<std::string>() << " | " << md_escape(r->at("witness").get<std::string>()) << " |\n";
    o << "\n";
  }
  return o.str();
}

std::string reconciliation_markdown(const json& doc, const ReferenceData& ref) {
  std::ostringstream o;
  o << "## Reconciliation\n\n";
  if (doc.at("classes").empty()) return o.str();
  o << "Counted classes: " << doc.at("counted").get<int>() << ".\n\n";
  o << "### Flagged classes\n\n";
  for (const auto& row : doc.at("classes")) {
    if (row.at("status") != "PaperDiscrepant") continue;
    o << "- " << row.at("label").get<std::string>() << ": " << row.at("reason").get<std::string>() << ". chi="
      << row.at("chi").get<std::string>() << ", chi(Gamma^1)=" << row.at("chi_norm_one").get<std::string>()
      << ", |H|=" << row.at("h_order").get<int>() << ", torsion orders " << orders_text(row.at("torsion"));
    for (const auto& [m, text] : row.at("torsion").at("witnesses").items())
      o << "; order " << m << ": " << text.get<std::string>();
    o << "\n";
  }
  o << "\n### Per-theorem comparison\n\n";
  for (const TheoremComparison& c : compare_theorems(doc, ref)) {
    o << "- " << c.group << ": engine " << c.engine_count << ", published " << c.listed_count
      << (c.equal() ? ", same signatures" : "") << "\n";
    for (const std::string& s : c.engine_only) {
      std::string notes;
      for (const auto& row : doc.at("classes"))
        if (row.at("counted").get<bool>() && sig_text(row) == s && !row.at("reason").get<std::string>().empty())
          notes = row.at("reason").get<std::string>();
      o << "  - engine only " << s << (notes.empty() ? "" : ": " + notes) << "\n";
    }
    std::set<std::string> seen;
    for (const std::string& s : c.listed_only) {
      if (!seen.insert(s).second) continue;
      Signature sig;
      for (const TheoremList& t : ref.theorems)
        for (const ListedClass& lc : t.classes)
          if (to_string(lc.key) == s) sig = lc.key;
      o << "  - published only " << s << " (x" << std::count(c.listed_only.begin(), c.listed_only.end(), s)
        << "): " << listed_evidence(sig, doc) << "\n";
    }
    for (const std::string& s : c.index_mismatch) o << "  - index " << s << "\n";
  }
  o << "\n### Index notes\n\n";
  for (const auto& row : doc.at("classes"))
    if (row.at("counted").get<bool>() && !row.at("exact_chi").is_null())
      o << "- " << row.at("label").get<std::string>() << ": |H(empty)| gives chi=" << row.at("exact_chi").get<std::string>()
        << " against " << row.at("chi").get<std::string>() << "\n";
  return o.str();
}

std::string report_markdown(const json& doc, const ReferenceData& ref, const std::vector<Table1Row>& table1_rows) {
  std::ostringstream o;
  o << "# Classification report\n\n" << table1_markdown(table1_rows);
  if (!doc.at("classes").empty()) o << theorem_markdown(doc, ref);
  o << reconciliation_markdown(doc, ref);
  return o.str();
}

json bounds_json(const BoundsReport& r) {
  json doc;
  doc["psi_cap"] = r.psi_cap;
  doc["degree_cap"] = r.degree_cap;
  doc["slack_34"] = r.slack_34;
  doc["table"] = r.table_path;
  json rows = json::array();
  for (const DegreeRow& x : r.rows) {
    json row;
    row["n"] = x.n;
    row["q_max"] = x.q_max;
    row["psi_at_1"] = x.psi_at_1;
    row["P"] = x.p_value;
    row["m_r"] = x.m_r;
    row["excluded"] = x.excluded;
    row["reason"] = x.reason;
    rows.push_back(row);
  }
  doc["rows"] = rows;
  json bands = json::array();
  for (const QBand& b : r.bands) bands.push_back({b.lo, b.hi, b.q});
  doc["bands"] = bands;
  return doc;
}

std::string bounds_markdown(const BoundsReport& r) {
  std::ostringstream o;
  o << "# Degree bounds\n\n";
  o << "Psi_f(n,1) <= 1 up to n = " << r.psi_cap << "; degree cap after the root discriminant comparison: n <= "
    << r.degree_cap << ".\n\n";
  o << "| n | q_max | P(n,q_max) | m_r(n) | excluded |\n|---:|---:|---:|---:|---|\n";
  for (const DegreeRow& x : r.rows) {
    char p[32] = "-", m[32] = "-";
    if (x.q_max > 0) std::snprintf(p, sizeof p, "%.6f", x.p_value);
    if (x.m_r > 0) std::snprintf(m, sizeof m, "%.4f", x.m_r);
    std::string q = x.q_max < 0 ? "unbounded" : x.q_max == 0 ? "none" : std::to_string(x.q_max);
    o << "| " << x.n << " | " << q << " | " << p << " | " << m << " | " << (x.excluded ? x.reason : "") << " |\n";
  }
  o << "\n## q bands\n\n";
  for (const QBand& b : r.bands) {
    if (b.lo == b.hi) o << "- n = " << b.lo << ": [k'_B:k] <= " << b.q << "\n";
    else o << "- " << b.lo << " <= n <= " << b.hi << ": [k'_B:k] <= " << b.q << "\n";
  }
  return o.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IOError("cannot write " + tmp.string());
    out << text;
    if (!out) throw IOError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IOError("cannot rename to " + path + ": " + ec.message());
}

}  // namespace fqlat
