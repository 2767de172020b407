#pragma once

// On-disk cache of operator matrices.
//
// File layout (little-endian):
//   magic    4 bytes  "LBOP"
//   version  1 byte   0x01
//   keylen   uint32   length of the UTF-8 cache key that follows
//   key      keylen bytes
//   rows     uint64
//   cols     uint64
//   entries  rows * cols pairs of float64 (re, im), row-major
//
// Writes go to a temporary sibling file that is renamed into place, so
// concurrent processes never observe a partially written entry.

#include "liebasis/types.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <unistd.h>

namespace liebasis {

inline constexpr std::array<char, 4> kCacheMagic{'L', 'B', 'O', 'P'};
inline constexpr std::uint8_t kCacheVersion = 1;

namespace detail {

static_assert(std::endian::native == std::endian::little, "cache I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

}  // namespace detail

/// Serializes a matrix in the cache container format.
inline void write_matrix(std::ostream& os, const std::string& key, const Matrix& m) {
  os.write(kCacheMagic.data(), kCacheMagic.size());
  detail::put<std::uint8_t>(os, kCacheVersion);
  detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(key.size()));
  os.write(key.data(), static_cast<std::streamsize>(key.size()));
  detail::put<std::uint64_t>(os, static_cast<std::uint64_t>(m.rows()));
  detail::put<std::uint64_t>(os, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      detail::put<double>(os, m(r, c).real());
      detail::put<double>(os, m(r, c).imag());
    }
}

/// Reads a matrix; returns nullopt on a malformed container or when the
/// stored key differs from expected_key (when one is given).
inline std::optional<Matrix> read_matrix(std::istream& is, const std::string* expected_key = nullptr) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kCacheMagic) return std::nullopt;
  std::uint8_t version = 0;
  if (!detail::get(is, version) || version != kCacheVersion) return std::nullopt;
  std::uint32_t keylen = 0;
  if (!detail::get(is, keylen) || keylen > (1u << 16)) return std::nullopt;
  std::string key(keylen, '\0');
  if (!is.read(key.data(), keylen)) return std::nullopt;
  if (expected_key && key != *expected_key) return std::nullopt;
  std::uint64_t rows = 0, cols = 0;
  if (!detail::get(is, rows) || !detail::get(is, cols) || rows > (1u << 16) || cols > (1u << 16)) return std::nullopt;
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double re = 0.0, im = 0.0;
      if (!detail::get(is, re) || !detail::get(is, im)) return std::nullopt;
      m(r, c) = cplx(re, im);
    }
  return m;
}

class OperatorCache {
 public:
  explicit OperatorCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".lbop"); }

  std::optional<Matrix> load(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    return read_matrix(in, &key);
  }

  /// Best effort: I/O failures leave the cache untouched and return false.
  bool store(const std::string& key, const Matrix& m) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return false;
    const auto target = path_for(key);
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(unique_suffix());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return false;
      write_matrix(out, key, m);
      if (!out) {
        std::filesystem::remove(tmp, ec);
        return false;
      }
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
    return !ec;
  }

 private:
  static std::uint64_t unique_suffix() {
    static std::atomic<std::uint64_t> counter{std::random_device{}()};
    return counter.fetch_add(1);
  }

  std::filesystem::path dir_;
};

}  // namespace liebasis
