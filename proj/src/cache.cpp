#include "fqlat/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>

#include "fqlat/classifier.hpp"
#include "fqlat/report.hpp"

namespace fqlat {
namespace fs = std::filesystem;

std::string cache_dir() {
  if (const char* env = std::getenv("FQLAT_CACHE_DIR"); env && *env) return env;
  return ".fqlat-cache";
}

namespace {

fs::path cache_file(const std::string& dir, long d) { return fs::path(dir) / ("d" + std::to_string(d) + ".json"); }

json compute_rows(long d, const std::map<Signature, Witness>& witnesses, const ReferenceData& ref) {
  return classes_document(classify({d}, witnesses, ref)).at("classes");
}

}  // namespace

std::optional<json> cache_load(const std::string& dir, long d) {
  fs::path p = cache_file(dir, d);
  if (!fs::exists(p)) return std::nullopt;
  std::ifstream in(p);
  if (!in) throw CacheCorrupt("cannot read " + p.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw CacheCorrupt(p.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema")) throw CacheCorrupt(p.string() + ": no schema stamp");
  if (doc.at("schema") != CACHE_SCHEMA) return std::nullopt;
  if (!doc.contains("d") || doc.at("d") != d || !doc.contains("classes") || !doc.at("classes").is_array())
    throw CacheCorrupt(p.string() + ": malformed entry");
  return doc.at("classes");
}

void cache_store(const std::string& dir, long d, const json& rows) {
  json doc;
  doc["schema"] = CACHE_SCHEMA;
  doc["d"] = d;
  doc["classes"] = rows;
  write_file_atomic(cache_file(dir, d).string(), doc.dump(1) + "\n");
}

json classify_cached(const std::vector<long>& ds_in, const std::string& dir, bool rebuild, int jobs) {
  std::vector<long> ds = ds_in.empty() ? load_reference().screen : ds_in;
  auto witnesses = load_witnesses();
  ReferenceData ref = load_reference();
  std::vector<json> per_d(ds.size());
  std::vector<size_t> todo;
  for (size_t i = 0; i < ds.size(); ++i) {
    std::optional<json> hit = rebuild ? std::nullopt : cache_load(dir, ds[i]);
    if (hit) per_d[i] = *hit;
    else todo.push_back(i);
  }
  jobs = std::max(1, jobs);
  for (size_t start = 0; start < todo.size(); start += jobs) {
    std::vector<std::future<json>> running;
    for (size_t j = start; j < std::min(todo.size(), start + jobs); ++j)
      running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, compute_rows,
                                   ds[todo[j]], std::cref(witnesses), std::cref(ref)));
    for (size_t j = start; j < std::min(todo.size(), start + jobs); ++j) {
      per_d[todo[j]] = running[j - start].get();
      cache_store(dir, ds[todo[j]], per_d[todo[j]]);
    }
  }
  std::vector<json> rows;
  for (const json& chunk : per_d)
    for (const json& r : chunk) rows.push_back(r);
  return classes_document(rows);
}

}  // namespace fqlat
