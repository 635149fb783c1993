#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bsfe/bits.hpp"
#include "bsfe/circuit.hpp"
#include "bsfe/rng.hpp"

namespace bsfe {

struct GarbleConfig {
  std::size_t label_bits = 128;  // 1..128
  std::size_t tag_bits = 32;     // 0..32
};

// Label bits packed little-endian; the select (point-and-permute) bit is
// label bit 0.
struct WireLabel {
  std::array<std::uint64_t, 2> w{0, 0};

  bool select_bit() const { return (w[0] & 1U) != 0; }
  BitVector bits(std::size_t n) const;
  static WireLabel from_bits(const BitVector& b);
  static WireLabel random(std::size_t n, Rng& rng);
  bool operator==(const WireLabel&) const = default;
};

// What garbling does not hide: wiring, and which gates are binary, NOT or
// constant. Binary gates appear as And, constants as Const0.
struct Topology {
  std::size_t n_inputs = 0;
  std::vector<Gate> gates;
  std::vector<std::uint32_t> outputs;
  bool operator==(const Topology&) const = default;
};

Topology topology_of(const BooleanCircuit& c);

struct GarbledRow {
  std::array<std::uint64_t, 2> label{0, 0};
  std::uint32_t tag = 0;
  bool operator==(const GarbledRow&) const = default;
};

struct GarbledCircuit {
  GarbleConfig config;
  Topology top;
  // One table per binary gate, rows indexed by 2*select(a) + select(b).
  std::vector<std::array<GarbledRow, 4>> tables;
  // Active label of each constant gate, in gate order.
  std::vector<WireLabel> constants;
  // (label for 0, label for 1) per output.
  std::vector<std::pair<WireLabel, WireLabel>> decode;

  std::size_t size_bits() const;
};

struct GarbleKey {
  std::size_t label_bits = 128;
  std::vector<std::pair<WireLabel, WireLabel>> inputs;
};

std::pair<GarbledCircuit, GarbleKey> gcircuit(const BooleanCircuit& c, Rng& rng,
                                              const GarbleConfig& config = {});
WireLabel ginput(const GarbleKey& key, std::size_t i, bool b);
std::vector<WireLabel> ginput_all(const GarbleKey& key, const BitVector& x);
BitVector geval(const GarbledCircuit& gc, const std::vector<WireLabel>& labels);
// Simulated garbling from (x, y, top) alone; x is only used for its length.
std::pair<std::vector<WireLabel>, GarbledCircuit> gsimulate(const BitVector& x, const BitVector& y,
                                                            const Topology& top, Rng& rng,
                                                            const GarbleConfig& config = {});

}  // namespace bsfe
