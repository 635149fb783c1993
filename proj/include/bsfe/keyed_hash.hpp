#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace bsfe {

// 128-bit keyed hash (SipHash-2-4 with 128-bit output, via libsodium).
std::array<std::uint64_t, 2> keyed_hash128(const std::array<std::uint64_t, 2>& key,
                                           std::span<const std::uint64_t> message);

// 64-bit output variant (SipHash-2-4).
std::uint64_t keyed_hash64(const std::array<std::uint64_t, 2>& key, std::span<const std::uint64_t> message);

}  // namespace bsfe
