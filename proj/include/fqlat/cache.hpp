#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fqlat {

class CacheCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int CACHE_SCHEMA = 1;

// FQLAT_CACHE_DIR, else ".fqlat-cache" in the working directory.
std::string cache_dir();

// Rows for discriminant d; empty when absent or from another schema version.
// Throws CacheCorrupt on unreadable files.
std::optional<nlohmann::json> cache_load(const std::string& dir, long d);
void cache_store(const std::string& dir, long d, const nlohmann::json& rows);

// Classification rows for ds (all screened discriminants when empty), computed
// per discriminant with up to `jobs` workers and merged in canonical order.
// With rebuild set, existing cache files are ignored and rewritten.
nlohmann::json classify_cached(const std::vector<long>& ds, const std::string& dir, bool rebuild, int jobs = 1);

}  // namespace fqlat
