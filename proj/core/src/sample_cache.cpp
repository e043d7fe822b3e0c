#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "fspec/descriptor.hpp"
#include "fspec/transform.hpp"

// Binary sample cache: one file per (measure, grid) pair, keyed by an FNV-1a
// hash of the canonical descriptor and grid signature.  The format is
// version-stamped; readers reject anything that does not match exactly.

namespace fspec {

namespace {

constexpr char kMagic[4] = {'F', 'S', 'P', 'C'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Header {
  char magic[4];
  std::uint32_t version;
  std::uint64_t key_hash;
  std::uint32_t dim;
  std::uint32_t shells;
  std::uint64_t node_count;
  double mass;
};

std::string cache_path(const std::string& dir, const std::string& key) {
  return (std::filesystem::path(dir) / (key + ".fspc")).string();
}

}  // namespace

std::string sample_cache_key(const Measure& m, const FrequencyGrid& grid) {
  std::string text = canonical_descriptor(m) + "|" + grid.signature();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)fnv1a(text));
  return std::string("fspc-") + buf;
}

bool save_samples(const std::string& dir, const std::string& key,
                  const TransformSamples& s) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::string path = cache_path(dir, key);
  std::ofstream out(path + ".tmp", std::ios::binary | std::ios::trunc);
  if (!out) return false;
  Header h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kVersion;
  h.key_hash = fnv1a(key);
  h.dim = std::uint32_t(s.grid.dim);
  h.shells = std::uint32_t(s.grid.shells);
  h.node_count = s.values.size();
  h.mass = s.mass;
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(s.values.data()),
            std::streamsize(s.values.size() * sizeof(std::complex<double>)));
  out.write(reinterpret_cast<const char*>(s.err.data()),
            std::streamsize(s.err.size() * sizeof(double)));
  if (!out) return false;
  out.close();
  std::filesystem::rename(path + ".tmp", path, ec);
  return !ec;
}

bool load_samples(const std::string& dir, const std::string& key,
                  const FrequencyGrid& grid, TransformSamples& out) {
  std::ifstream in(cache_path(dir, key), std::ios::binary);
  if (!in) return false;
  Header h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, kMagic, 4) != 0 || h.version != kVersion ||
      h.key_hash != fnv1a(key) || h.dim != std::uint32_t(grid.dim) ||
      h.shells != std::uint32_t(grid.shells) ||
      h.node_count != grid.nodes.size())
    return false;
  out.grid = grid;
  out.mass = h.mass;
  out.values.resize(h.node_count);
  out.err.resize(h.node_count);
  in.read(reinterpret_cast<char*>(out.values.data()),
          std::streamsize(h.node_count * sizeof(std::complex<double>)));
  in.read(reinterpret_cast<char*>(out.err.data()),
          std::streamsize(h.node_count * sizeof(double)));
  return bool(in);
}

}  // namespace fspec
