#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "cattree/error.hpp"

namespace cattree {

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// Little-endian fixed-width encoder used by every persisted structure.
class BinaryWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }

  void bytes(std::string_view s) {
    u64(s.size());
    buf_.append(s);
  }

  template <typename T>
  void vec(const std::vector<T>& values) {
    static_assert(std::is_integral_v<T>);
    u64(values.size());
    for (T v : values) put(static_cast<std::uint64_t>(v), sizeof(T));
  }

  const std::string& data() const noexcept { return buf_; }
  std::string take() noexcept { return std::move(buf_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }

  std::string buf_;
};

// Bounds-checked decoder; any truncation or implausible length raises
// Error(MalformedIndex).
class BinaryReader {
 public:
  explicit BinaryReader(std::string_view data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }

  std::string bytes() {
    const std::uint64_t n = u64();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }

  template <typename T>
  std::vector<T> vec() {
    static_assert(std::is_integral_v<T>);
    const std::uint64_t n = u64();
    if (n > remaining() / sizeof(T)) fail("vector length exceeds payload");
    std::vector<T> values(n);
    for (auto& v : values) v = static_cast<T>(get(sizeof(T)));
    return values;
  }

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  bool done() const noexcept { return pos_ == data_.size(); }

  [[noreturn]] static void fail(const std::string& why) { throw Error(Errc::MalformedIndex, why); }

 private:
  void need(std::uint64_t n) const {
    if (n > remaining()) fail("truncated payload");
  }

  std::uint64_t get(int width) {
    need(width);
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace cattree
