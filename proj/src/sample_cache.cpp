#include "ladderlab/sample_cache.hpp"

#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace ladderlab {
namespace {

constexpr char kMagic[4] = {'L', 'L', 'Z', 'C'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t key_of(double t) { return std::bit_cast<std::uint64_t>(t); }

struct Header {
  char magic[4];
  std::uint32_t version;
  double t_start;
  double t_end;
  double tol;
  std::uint64_t count;
};

}  // namespace

void SampleCache::load_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".bin") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, 4) != 0 || h.version != kVersion ||
        !(h.t_start <= h.t_end)) {
      std::fprintf(stderr, "ladderlab: ignoring corrupted cache file %s\n",
                   entry.path().c_str());
      continue;
    }
    std::vector<double> buf(2 * h.count);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!in) {
      std::fprintf(stderr, "ladderlab: ignoring truncated cache file %s\n",
                   entry.path().c_str());
      continue;
    }
    for (std::uint64_t i = 0; i < h.count; ++i)
      table_.emplace(key_of(buf[2 * i]), buf[2 * i + 1]);
  }
}

std::optional<double> SampleCache::lookup_z(double t) const {
  auto it = table_.find(key_of(t));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void SampleCache::insert(double t, double z) { table_.emplace(key_of(t), z); }

std::string SampleCache::file_name(double t_start, double t_end, double tol) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "zsamples_%.17g_%.17g_%.17g.bin", t_start,
                t_end, tol);
  std::string s(buf);
  std::replace(s.begin(), s.end(), '+', 'p');
  return s;
}

std::size_t SampleCache::write_file(const std::string& dir, double t_start,
                                    double t_end, double tol) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / file_name(t_start, t_end, tol);

  std::vector<std::pair<double, double>> rows;
  for (const auto& [bits, z] : table_) {
    const double t = std::bit_cast<double>(bits);
    if (t >= t_start && t <= t_end) rows.emplace_back(t, z);
  }
  std::sort(rows.begin(), rows.end());

  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (in && std::memcmp(h.magic, kMagic, 4) == 0 && h.version == kVersion &&
        h.count == rows.size())
      return 0;  // already warm
  }

  const fs::path lock_path = fs::path(dir) / ".lock";
  FILE* lock = std::fopen(lock_path.c_str(), "w");
  if (lock) flock(fileno(lock), LOCK_EX);

  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot open " + tmp.string());
    Header h{};
    std::memcpy(h.magic, kMagic, 4);
    h.version = kVersion;
    h.t_start = t_start;
    h.t_end = t_end;
    h.tol = tol;
    h.count = rows.size();
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    for (const auto& [t, z] : rows) {
      out.write(reinterpret_cast<const char*>(&t), sizeof(double));
      out.write(reinterpret_cast<const char*>(&z), sizeof(double));
    }
    if (!out) throw std::runtime_error("cache: write failed: " + tmp.string());
  }
  fs::rename(tmp, path);

  if (lock) {
    flock(fileno(lock), LOCK_UN);
    std::fclose(lock);
  }
  return rows.size();
}

}  // namespace ladderlab
