#ifndef KLPAR_IO_HPP
#define KLPAR_IO_HPP

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "core/errors.hpp"

namespace klp::io {

// Little-endian primitive serialization. All on-disk formats in this
// project are little-endian regardless of host order.

template <typename T>
inline void write_le(std::ostream& os, T value) {
  static_assert(std::is_integral_v<T>);
  unsigned char buf[sizeof(T)];
  using U = std::make_unsigned_t<T>;
  U u = static_cast<U>(value);
  for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
inline T read_le(std::istream& is) {
  static_assert(std::is_integral_v<T>);
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!is) throw IoError("unexpected end of stream");
  using U = std::make_unsigned_t<T>;
  U u = 0;
  for (size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(buf[i]) << (8 * i);
  return static_cast<T>(u);
}

// CRC-64 (ECMA-182 polynomial, reflected; the xz variant).
class Crc64 {
 public:
  Crc64();
  void update(const void* data, size_t n);
  uint64_t value() const { return ~crc_; }

 private:
  uint64_t crc_;
};

// Stream adapters that maintain a running CRC over everything written/read.
class CrcWriter {
 public:
  explicit CrcWriter(std::ostream& os) : os_(os) {}
  template <typename T>
  void put(T v) {
    unsigned char buf[sizeof(T)];
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(v);
    for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(u >> (8 * i));
    crc_.update(buf, sizeof(T));
    os_.write(reinterpret_cast<const char*>(buf), sizeof(T));
  }
  void put_bytes(const void* data, size_t n) {
    crc_.update(data, n);
    os_.write(reinterpret_cast<const char*>(data), n);
  }
  uint64_t crc() const { return crc_.value(); }

 private:
  std::ostream& os_;
  Crc64 crc_;
};

class CrcReader {
 public:
  explicit CrcReader(std::istream& is) : is_(is) {}
  template <typename T>
  T get() {
    unsigned char buf[sizeof(T)];
    is_.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!is_) throw IoError("unexpected end of stream");
    crc_.update(buf, sizeof(T));
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(buf[i]) << (8 * i);
    return static_cast<T>(u);
  }
  void get_bytes(void* data, size_t n) {
    is_.read(reinterpret_cast<char*>(data), n);
    if (!is_) throw IoError("unexpected end of stream");
    crc_.update(data, n);
  }
  uint64_t crc() const { return crc_.value(); }

 private:
  std::istream& is_;
  Crc64 crc_;
};

}  // namespace klp::io

#endif
