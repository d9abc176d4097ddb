#include "fqlat/fqlat.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "fqlat/bounds.hpp"
#include "fqlat/cache.hpp"
#include "fqlat/classifier.hpp"
#include "fqlat/report.hpp"

struct fqlat_field {
  fqlat::Field k;
};

struct fqlat_classification {
  nlohmann::json doc;
};

namespace {

using namespace fqlat;

thread_local std::string last_error;

fqlat_status fail(fqlat_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
fqlat_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return FQLAT_OK;
  } catch (const CacheCorrupt& e) {
    return fail(FQLAT_ERR_CACHE, e.what());
  } catch (const TableGap& e) {
    return fail(FQLAT_ERR_TABLE_GAP, e.what());
  } catch (const IOError& e) {
    return fail(FQLAT_ERR_IO, e.what());
  } catch (const DomainError& e) {
    return fail(FQLAT_ERR_DOMAIN, e.what());
  } catch (const SearchBoundExceeded& e) {
    return fail(FQLAT_ERR_DOMAIN, e.what());
  } catch (const std::domain_error& e) {
    return fail(FQLAT_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FQLAT_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(FQLAT_ERR_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FQLAT_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(FQLAT_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string rat_text(const Rat& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

PlaceSet parse_places(const char* text) {
  PlaceSet out;
  if (!text) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    out.push_back(parse_place(item));
  }
  return sorted(out);
}

std::vector<long> parse_longs(const char* text) {
  std::vector<long> out;
  if (!text) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    size_t used = 0;
    long v = std::stol(item, &used);
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

nlohmann::json place_json(const PlaceSet& set) {
  nlohmann::json out = nlohmann::json::array();
  for (const Place& v : set) out.push_back(to_string(v));
  return out;
}

nlohmann::json interval_json(const Interval& x) { return {x.lower(), x.upper()}; }

}  // namespace

extern "C" {

const char* fqlat_version(void) { return "0.1.0"; }

const char* fqlat_last_error(void) { return last_error.c_str(); }

void fqlat_string_free(char* s) { std::free(s); }

fqlat_status fqlat_field_new(long d, fqlat_field** out) {
  if (!out) return fail(FQLAT_ERR_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guard([&] { *out = new fqlat_field{field_from_discriminant(d)}; });
}

void fqlat_field_free(fqlat_field* k) { delete k; }

fqlat_status fqlat_field_info(const fqlat_field* f, char** json_out) {
  if (!f || !json_out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const Field& k = f->k;
    nlohmann::json j;
    j["d"] = k.d;
    j["m"] = k.m;
    j["h"] = k.cl.h;
    j["h_plus"] = k.cl.h_plus;
    j["t"] = k.t;
    j["b2"] = rat_text(k.b2);
    j["unit"] = k.format(k.unit.eps);
    j["unit_norm"] = k.unit.norm_sign;
    j["unit_totally_positive"] = k.unit.totally_positive;
    j["tp_unit_index"] = k.unit.tp_unit_index();
    j["class_group"] = k.cl.elementary_divisors(false);
    j["narrow_class_group"] = k.cl.elementary_divisors(true);
    std::set<int> orders = possible_orders(k);
    j["torsion_orders"] = std::vector<int>(orders.begin(), orders.end());
    *json_out = dup(j.dump());
  });
}

fqlat_status fqlat_chi(const fqlat_field* f, const char* ramified, const char* s, char** json_out) {
  if (!f || !ramified || !json_out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const Field& k = f->k;
    PlaceSet r = parse_places(ramified), sp = parse_places(s);
    nlohmann::json j;
    j["chi1"] = rat_text(chi_norm_one(k, r));
    j["chiN"] = rat_text(chi_normalizer(k, r));
    if (!sp.empty()) {
      MaximalChi c = chi_maximal(k, r, sp);
      j["s"] = place_json(sp);
      if (c.ambiguous()) {
        nlohmann::json cands = nlohmann::json::array();
        for (const Rat& x : c.candidates) cands.push_back(rat_text(x));
        j["chiS_candidates"] = cands;
      } else {
        j["chiS"] = rat_text(c.value);
        j["m"] = c.m;
        j["maximal"] = c.maximal;
        if (c.certificate) j["certificate"] = k.format(*c.certificate);
      }
    }
    *json_out = dup(j.dump());
  });
}

fqlat_status fqlat_torsion(const fqlat_field* f, const char* ramified, const char* s, char** json_out) {
  if (!f || !ramified || !json_out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const Field& k = f->k;
    PlaceSet r = parse_places(ramified), sp = parse_places(s);
    check_s(k, r, sp);
    SquareClassGroup h = h_group(k, r, sp);
    TorsionReport t = torsion_spectrum(k, r, sp, h);
    nlohmann::json j;
    j["orders"] = std::vector<int>(t.orders.begin(), t.orders.end());
    j["linked"] = std::vector<int>(t.linked.begin(), t.linked.end());
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [m, text] : t.witnesses) w[std::to_string(m)] = text;
    j["witnesses"] = w;
    nlohmann::json hs = nlohmann::json::array();
    for (const Elem& e : h.elements) hs.push_back(k.format(e));
    j["h_group"] = hs;
    nlohmann::json ys = nlohmann::json::array();
    for (const Elem& e : has_torsion(k, r, sp, 2, h).classes) ys.push_back(k.format(e));
    j["order2_classes"] = ys;
    nlohmann::json riehm = nlohmann::json::object();
    for (const Place& v : r) riehm[to_string(v)] = riehm_index(k, r, v);
    j["riehm"] = riehm;
    *json_out = dup(j.dump());
  });
}

fqlat_status fqlat_enumerate(const fqlat_field* f, char** json_out) {
  if (!f || !json_out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const Field& k = f->k;
    RamificationResult r = enumerate_ramification(k);
    nlohmann::json j;
    j["d"] = k.d;
    j["cap0"] = rat_text(r.cap0);
    nlohmann::json raw = nlohmann::json::array(), refined = nlohmann::json::array();
    for (const PlaceSet& x : r.raw) raw.push_back(place_json(x));
    for (const PlaceSet& x : r.refined) {
      nlohmann::json e;
      e["ramified"] = place_json(x);
      e["chiN"] = rat_text(chi_normalizer(k, x));
      nlohmann::json ss = nlohmann::json::array();
      for (const SCandidate& c : enumerate_s(k, x)) {
        nlohmann::json sc;
        sc["s"] = place_json(c.s);
        sc["chi"] = rat_text(c.chi.value);
        sc["m"] = c.chi.m;
        if (c.chi.certificate) sc["certificate"] = k.format(*c.chi.certificate);
        nlohmann::json adm = nlohmann::json::array();
        for (const Rat& a : c.admissible) adm.push_back(rat_text(a));
        sc["admissible"] = adm;
        ss.push_back(sc);
      }
      e["s_candidates"] = ss;
      refined.push_back(e);
    }
    j["raw"] = raw;
    j["refined"] = refined;
    *json_out = dup(j.dump());
  });
}

fqlat_status fqlat_screen(long max_d, char** json_out) {
  if (!json_out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    if (max_d < 5) throw DomainError("max_d must be at least 5");
    nlohmann::json j;
    j["max_d"] = max_d;
    j["discriminants"] = integrality_screen(max_d);
    *json_out = dup(j.dump());
  });
}

fqlat_status fqlat_table1(fqlat_format format, char** out) {
  if (!out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    std::vector<Table1Row> rows;
    for (long d : integrality_screen(1285)) rows.push_back(table1(d));
    if (format == FQLAT_FORMAT_MARKDOWN) {
      *out = dup(table1_markdown(rows));
      return;
    }
    nlohmann::json j = nlohmann::json::array();
    for (const Table1Row& r : rows) j.push_back({{"d", r.d}, {"h", r.h}, {"t", r.t}, {"g", rat_text(r.g)}});
    *out = dup(j.dump());
  });
}

fqlat_status fqlat_classify(const char* discriminants, const char* cache, int rebuild, int jobs,
                            fqlat_classification** out) {
  if (!out) return fail(FQLAT_ERR_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guard([&] {
    std::vector<long> ds = parse_longs(discriminants);
    for (long d : ds)
      if (!is_fundamental_discriminant(d) || d <= 1) throw DomainError(std::to_string(d) + " is not a fundamental discriminant");
    std::string dir = cache && *cache ? cache : cache_dir();
    *out = new fqlat_classification{classify_cached(ds, dir, rebuild != 0, jobs)};
  });
}

fqlat_status fqlat_classification_load(const char* json, fqlat_classification** out) {
  if (!json || !out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    nlohmann::json doc = nlohmann::json::parse(json);
    if (!doc.contains("classes") || !doc.at("classes").is_array()) throw std::invalid_argument("no classes array");
    *out = new fqlat_classification{doc};
  });
}

void fqlat_classification_free(fqlat_classification* c) { delete c; }

int fqlat_classification_counted(const fqlat_classification* c) {
  return c ? c->doc.value("counted", 0) : -1;
}

fqlat_status fqlat_classification_json(const fqlat_classification* c, char** out) {
  if (!c || !out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = dup(c->doc.dump(1) + "\n"); });
}

fqlat_status fqlat_classification_report(const fqlat_classification* c, char** markdown_out) {
  if (!c || !markdown_out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    std::vector<Table1Row> rows;
    std::set<long> ds;
    for (const auto& r : c->doc.at("classes")) ds.insert(r.at("d").get<long>());
    if (!ds.empty())
      for (long d : integrality_screen(1285)) rows.push_back(table1(d));
    *markdown_out = dup(report_markdown(c->doc, load_reference(), rows));
  });
}

fqlat_status fqlat_classification_reconciliation(const fqlat_classification* c, char** markdown_out) {
  if (!c || !markdown_out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] { *markdown_out = dup("# Reconciliation report\n\n" + reconciliation_markdown(c->doc, load_reference())); });
}

fqlat_status fqlat_bounds(int degree, long q, const char* table_path, fqlat_format format, char** out) {
  if (!out) return fail(FQLAT_ERR_ARGUMENT, "null argument");
  return guard([&] {
    OdlyzkoTable table = table_path && *table_path ? load_odlyzko(table_path) : load_odlyzko();
    if (degree <= 0) {
      BoundsReport r = degree_bound_report(table);
      *out = dup(format == FQLAT_FORMAT_MARKDOWN ? bounds_markdown(r) : bounds_json(r).dump(1) + "\n");
      return;
    }
    long qq = q <= 0 ? 1 : q;
    if (qq & (qq - 1)) throw DomainError("q must be a power of two");
    nlohmann::json j;
    j["n"] = degree;
    j["q"] = qq;
    j["rho_f"] = regulator_lower(degree, RegulatorVariant::Friedman);
    j["rho_s"] = regulator_lower(degree, RegulatorVariant::Slavutskii);
    j["psi"] = interval_json(psi_lower_interval(degree, qq));
    j["P"] = interval_json(root_disc_upper_interval(degree, qq));
    if (table.bound.count(degree)) {
      j["m_r"] = table.at(degree);
      j["m_r_source"] = table.source.at(degree);
    }
    if (format == FQLAT_FORMAT_MARKDOWN) {
      std::ostringstream o;
      o << "| n | q | rho_f | rho_s | Psi_f | P(n,q) |\n|---:|---:|---:|---:|---|---|\n| " << degree << " | " << qq
        << " | " << j["rho_f"].get<double>() << " | " << j["rho_s"].get<double>() << " | "
        << psi_lower_interval(degree, qq).to_string() << " | " << root_disc_upper_interval(degree, qq).to_string()
        << " |\n";
      *out = dup(o.str());
      return;
    }
    *out = dup(j.dump() + "\n");
  });
}

}  // extern "C"
