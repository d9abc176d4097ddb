#include "fqlat/witness.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fqlat {
namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IOError(path + ": " + e.what());
  }
}

std::vector<long> primes_of(const json& arr) {
  std::vector<long> out;
  for (const auto& x : arr) out.push_back(std::stol(x.get<std::string>()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string to_string(const Signature& s) {
  std::ostringstream o;
  o << "[" << s.d << ", ";
  for (size_t i = 0; i < s.ramified.size(); ++i) o << (i ? "." : "") << "v" << s.ramified[i];
  o << ", {";
  for (size_t i = 0; i < s.s.size(); ++i) o << (i ? "," : "") << "v" << s.s[i];
  o << "}]";
  return o.str();
}

std::string data_dir() {
  if (const char* env = std::getenv("FQLAT_DATA_DIR"); env && *env) return env;
#ifdef FQLAT_DATA_DIR
  return FQLAT_DATA_DIR;
#else
  return "data";
#endif
}

std::map<Signature, Witness> load_witnesses(const std::string& path) {
  json doc = read_json(path);
  std::map<Signature, Witness> out;
  for (const auto& w : doc.at("witnesses")) {
    Witness x;
    x.key = Signature{w.at("d").get<long>(), primes_of(w.at("dB")), primes_of(w.at("S"))};
    x.index = w.at("I").get<long>();
    x.construction = w.at("construction").get<std::string>();
    x.source = w.value("source", "");
    out[x.key] = x;
  }
  return out;
}

std::map<Signature, Witness> load_witnesses() { return load_witnesses(data_dir() + "/witnesses.json"); }

ReferenceData load_reference(const std::string& path) {
  json doc = read_json(path);
  ReferenceData r;
  for (const auto& t : doc.at("theorems")) {
    TheoremList list;
    list.group = t.at("group").get<std::string>();
    list.fields = t.at("d").get<std::vector<long>>();
    for (const auto& c : t.at("classes")) {
      ListedClass lc;
      lc.key = Signature{c.at("d").get<long>(), primes_of(c.at("dB")), primes_of(c.at("S"))};
      lc.index = c.at("I").get<long>();
      lc.count = c.at("count").get<int>();
      list.classes.push_back(lc);
    }
    r.theorems.push_back(list);
  }
  for (const auto& e : doc.at("ramification")) {
    auto& v = r.ramification[e.at("d").get<long>()];
    for (const auto& s : e.at("dB")) v.push_back(primes_of(s));
  }
  for (const auto& e : doc.at("ramification_raw")) {
    auto& v = r.ramification_raw[e.at("d").get<long>()];
    for (const auto& s : e.at("dB")) v.push_back(primes_of(s));
  }
  for (const auto& e : doc.at("nonempty_s")) {
    auto& v = r.nonempty_s[{e.at("d").get<long>(), primes_of(e.at("dB"))}];
    for (const auto& s : e.at("S")) v.push_back(primes_of(s));
  }
  r.screen = doc.at("screen").get<std::vector<long>>();
  for (const auto& row : doc.at("table1"))
    r.table1.push_back({row[0].get<long>(), row[1].get<int>(), row[2].get<int>(), row[3].get<std::string>()});
  for (const auto& b : doc.at("degree_bands")) r.degree_bands.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>()});
  r.degree_cap = doc.at("degree_cap").get<int>();
  r.excluded_fields = doc.at("excluded_fields").get<std::vector<long>>();
  return r;
}

ReferenceData load_reference() { return load_reference(data_dir() + "/reference_lists.json"); }

}  // namespace fqlat
