#include "core/io.hpp"

namespace klp::io {

namespace {
struct Crc64Table {
  uint64_t t[256];
  Crc64Table() {
    const uint64_t poly = 0xC96C5795D7870F42ULL;  // reflected ECMA-182
    for (uint32_t i = 0; i < 256; ++i) {
      uint64_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? (c >> 1) ^ poly : c >> 1;
      t[i] = c;
    }
  }
};
const Crc64Table& table() {
  static const Crc64Table tab;
  return tab;
}
}  // namespace

Crc64::Crc64() : crc_(~0ULL) {}

void Crc64::update(const void* data, size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  const uint64_t* t = table().t;
  for (size_t i = 0; i < n; ++i) crc_ = t[(crc_ ^ p[i]) & 0xFF] ^ (crc_ >> 8);
}

}  // namespace klp::io
