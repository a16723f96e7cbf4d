#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

namespace ladderlab {

// Disk cache of critical-line samples, keyed by (t_start, t_end, tol).
// Binary layout, little-endian:
//   magic "LLZC" | u32 version | f64 t_start | f64 t_end | f64 tol |
//   u64 count | count * (f64 t, f64 z)
// Lookups key on the exact bit pattern of t; the quadrature engine places
// its nodes deterministically, so warm runs rehit the same bits.
class SampleCache {
 public:
  SampleCache() = default;

  // Loads every cache file in `dir` whose range intersects nothing in
  // particular -- all files are merged into one lookup table. Corrupted
  // files are skipped with a warning on stderr.
  void load_dir(const std::string& dir);

  std::optional<double> lookup_z(double t) const;

  void insert(double t, double z);

  // Writes the current table restricted to [t_start, t_end] as one cache
  // file under `dir` (advisory flock during the write; temp file + rename).
  // Returns the number of records written, or 0 if an identical file is
  // already present.
  std::size_t write_file(const std::string& dir, double t_start, double t_end,
                         double tol) const;

  static std::string file_name(double t_start, double t_end, double tol);

  std::size_t size() const { return table_.size(); }

  std::int64_t hits = 0;
  std::int64_t misses = 0;

 private:
  std::unordered_map<std::uint64_t, double> table_;
};

}  // namespace ladderlab
