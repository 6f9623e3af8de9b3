#pragma once

// Coefficient records and the append-only JSON-lines cache.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "magnetic/engine.hpp"

namespace magnetic {

struct CoefficientRecord {
  int k = 0;
  std::int64_t d = 0;
  std::int64_t D = 1;
  std::int64_t level = 1;
  std::string r;            // residue classes "r:w,..." at level > 1, empty at level 1
  bool corrected = false;   // cusp correction applied
  std::int64_t n = 0;
  std::string value;        // exact integer (or Gaussian integer) when certified
  bool certified = false;
  long precision_bits = 0;
  std::int64_t cutoff = 0;

  using Key = std::tuple<int, std::int64_t, std::int64_t, std::int64_t, std::string, bool, std::int64_t>;
  Key key() const { return {k, d, D, level, r, corrected, n}; }

  std::string to_json_line() const;
  /// Throws InvalidArgument on malformed input.
  static CoefficientRecord from_json_line(const std::string& line);
  static CoefficientRecord from_value(const FormSpec& spec, bool corrected, const CoefficientValue& v);
};

/// In-memory view of a cache file. Access from several processes at once is
/// not supported.
class CoefficientCache {
 public:
  /// Loads `path` if it exists; duplicate keys are compacted by a full rewrite
  /// that keeps the certified, highest-precision entry.
  explicit CoefficientCache(std::string path);

  std::optional<CoefficientRecord> find(const CoefficientRecord::Key& key) const;
  /// Appends a record to the file and the in-memory index.
  void store(const CoefficientRecord& record);
  /// Rewrites the file with one line per key.
  void compact();
  std::size_t size() const { return index_.size(); }

 private:
  static bool better(const CoefficientRecord& a, const CoefficientRecord& b);
  std::string path_;
  std::map<CoefficientRecord::Key, CoefficientRecord> index_;
};

}  // namespace magnetic
