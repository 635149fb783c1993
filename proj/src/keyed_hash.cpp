#include "bsfe/keyed_hash.hpp"

#include <bit>
#include <cstring>
#include <vector>

#include <sodium.h>

namespace bsfe {

namespace {

void store_le(unsigned char* out, std::uint64_t v) {
  if constexpr (std::endian::native != std::endian::little) v = __builtin_bswap64(v);
  std::memcpy(out, &v, 8);
}

std::uint64_t load_le(const unsigned char* in) {
  std::uint64_t v;
  std::memcpy(&v, in, 8);
  if constexpr (std::endian::native != std::endian::little) v = __builtin_bswap64(v);
  return v;
}

}  // namespace

std::array<std::uint64_t, 2> keyed_hash128(const std::array<std::uint64_t, 2>& key,
                                           std::span<const std::uint64_t> message) {
  static_assert(crypto_shorthash_siphashx24_KEYBYTES == 16);
  static_assert(crypto_shorthash_siphashx24_BYTES == 16);
  unsigned char k[16];
  store_le(k, key[0]);
  store_le(k + 8, key[1]);
  unsigned char buf[64];
  std::vector<unsigned char> heap;
  unsigned char* msg = buf;
  if (message.size() * 8 > sizeof(buf)) {
    heap.resize(message.size() * 8);
    msg = heap.data();
  }
  for (std::size_t i = 0; i < message.size(); ++i) store_le(msg + 8 * i, message[i]);
  unsigned char out[16];
  crypto_shorthash_siphashx24(out, msg, message.size() * 8, k);
  return {load_le(out), load_le(out + 8)};
}

std::uint64_t keyed_hash64(const std::array<std::uint64_t, 2>& key, std::span<const std::uint64_t> message) {
  static_assert(crypto_shorthash_siphash24_KEYBYTES == 16);
  static_assert(crypto_shorthash_siphash24_BYTES == 8);
  unsigned char k[16];
  store_le(k, key[0]);
  store_le(k + 8, key[1]);
  unsigned char buf[64];
  std::vector<unsigned char> heap;
  unsigned char* msg = buf;
  if (message.size() * 8 > sizeof(buf)) {
    heap.resize(message.size() * 8);
    msg = heap.data();
  }
  for (std::size_t i = 0; i < message.size(); ++i) store_le(msg + 8 * i, message[i]);
  unsigned char out[8];
  crypto_shorthash_siphash24(out, msg, message.size() * 8, k);
  return load_le(out);
}

}  // namespace bsfe
