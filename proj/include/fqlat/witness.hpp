#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqlat {

class IOError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A class key by rational-prime signature: split primes appear once per place,
// conjugate labels are dropped.
struct Signature {
  long d = 0;
  std::vector<long> ramified;
  std::vector<long> s;
  auto operator<=>(const Signature&) const = default;
};

std::string to_string(const Signature& s);

struct Witness {
  Signature key;
  long index = 0;  // index quoted next to the construction
  std::string construction;
  std::string source;
};

struct ListedClass {
  Signature key;
  long index = 0;
  int count = 1;  // conjugates listed separately
};

struct TheoremList {
  std::string group;  // d5, d8, d12, larger
  std::vector<long> fields;
  std::vector<ListedClass> classes;
};

struct ReferenceData {
  std::vector<TheoremList> theorems;
  std::map<long, std::vector<std::vector<long>>> ramification;      // d -> d_B signatures
  std::map<long, std::vector<std::vector<long>>> ramification_raw;
  std::map<std::pair<long, std::vector<long>>, std::vector<std::vector<long>>> nonempty_s;
  std::vector<long> screen;
  struct Row {
    long d;
    int h, t;
    std::string g;
  };
  std::vector<Row> table1;
  std::vector<std::array<int, 3>> degree_bands;  // lo, hi, q
  int degree_cap = 0;
  std::vector<long> excluded_fields;
};

// FQLAT_DATA_DIR from the environment, else the compiled-in source data path.
std::string data_dir();

std::map<Signature, Witness> load_witnesses(const std::string& path);
std::map<Signature, Witness> load_witnesses();
ReferenceData load_reference(const std::string& path);
ReferenceData load_reference();

}  // namespace fqlat
