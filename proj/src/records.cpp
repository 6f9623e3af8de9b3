#include "magnetic/records.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "magnetic/error.hpp"

namespace magnetic {

std::string CoefficientRecord::to_json_line() const {
  const nlohmann::ordered_json j{{"k", k},       {"d", d},
                                 {"D", D},       {"level", level},
                                 {"r", r},       {"corrected", corrected},
                                 {"n", n},       {"value", value},
                                 {"certified", certified}, {"precision_bits", precision_bits},
                                 {"cutoff", cutoff}};
  return j.dump();
}

CoefficientRecord CoefficientRecord::from_json_line(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    CoefficientRecord r;
    r.k = j.at("k").get<int>();
    r.d = j.at("d").get<std::int64_t>();
    r.D = j.at("D").get<std::int64_t>();
    r.level = j.at("level").get<std::int64_t>();
    r.r = j.at("r").get<std::string>();
    r.corrected = j.value("corrected", false);
    r.n = j.at("n").get<std::int64_t>();
    r.value = j.at("value").get<std::string>();
    r.certified = j.at("certified").get<bool>();
    r.precision_bits = j.at("precision_bits").get<long>();
    r.cutoff = j.at("cutoff").get<std::int64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed cache record: ") + e.what());
  }
}

CoefficientRecord CoefficientRecord::from_value(const FormSpec& spec, bool corrected, const CoefficientValue& v) {
  CoefficientRecord r;
  r.k = spec.k;
  r.d = spec.d;
  r.D = spec.D;
  r.level = spec.level;
  if (spec.level > 1) {
    const std::string key = spec.key();
    // key is "k,d,D,level,<residues>"
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) pos = key.find(',', pos) + 1;
    r.r = key.substr(pos);
  }
  r.corrected = corrected;
  r.n = v.n;
  r.value = v.value_string();
  r.certified = v.certified;
  r.precision_bits = v.certificate.precision_bits;
  r.cutoff = v.certificate.cutoff;
  return r;
}

CoefficientCache::CoefficientCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++lines;
    const auto rec = CoefficientRecord::from_json_line(line);
    auto it = index_.find(rec.key());
    if (it == index_.end() || better(rec, it->second)) index_[rec.key()] = rec;
  }
  if (lines != index_.size()) compact();
}

bool CoefficientCache::better(const CoefficientRecord& a, const CoefficientRecord& b) {
  if (a.certified != b.certified) return a.certified;
  return a.precision_bits > b.precision_bits;
}

std::optional<CoefficientRecord> CoefficientCache::find(const CoefficientRecord::Key& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void CoefficientCache::store(const CoefficientRecord& record) {
  auto it = index_.find(record.key());
  if (it != index_.end() && !better(record, it->second)) return;
  index_[record.key()] = record;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot write cache file " + path_);
  out << record.to_json_line() << "\n";
}

void CoefficientCache::compact() {
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp);
    for (const auto& [key, rec] : index_) out << rec.to_json_line() << "\n";
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace magnetic
