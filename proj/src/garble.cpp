#include "bsfe/garble.hpp"

#include "bsfe/error.hpp"
#include "bsfe/keyed_hash.hpp"

namespace bsfe {

namespace {

std::array<std::uint64_t, 2> label_mask(std::size_t n) {
  if (n >= 128) return {~0ULL, ~0ULL};
  if (n >= 64) return {~0ULL, n == 64 ? 0ULL : (1ULL << (n - 64)) - 1};
  return {(1ULL << n) - 1, 0ULL};
}

// Bits [from, from+len) of a little-endian 192-bit stream, len <= 64.
std::uint64_t take_bits(const std::array<std::uint64_t, 3>& s, std::size_t from, std::size_t len) {
  if (len == 0) return 0;
  const std::size_t w = from / 64, o = from % 64;
  std::uint64_t v = s[w] >> o;
  if (o != 0 && w + 1 < 3) v |= s[w + 1] << (64 - o);
  return len == 64 ? v : v & ((1ULL << len) - 1);
}

// Dual-key pad PRF(A || B || gate_id), split into label and tag parts. The
// top bit of the gate word separates the second block of wide pads.
GarbledRow pad(const WireLabel& a, const WireLabel& b, std::uint64_t gate_id, const GarbleConfig& cfg) {
  std::array<std::uint64_t, 3> s{0, 0, 0};
  const std::array<std::uint64_t, 3> msg0{b.w[0], b.w[1], gate_id};
  if (cfg.label_bits + cfg.tag_bits <= 64) {
    s[0] = keyed_hash64(a.w, msg0);
  } else {
    const auto h0 = keyed_hash128(a.w, msg0);
    s[0] = h0[0];
    s[1] = h0[1];
  }
  if (cfg.label_bits + cfg.tag_bits > 128) {
    const std::array<std::uint64_t, 3> msg1{b.w[0], b.w[1], gate_id | (std::uint64_t{1} << 63)};
    s[2] = keyed_hash128(a.w, msg1)[0];
  }
  GarbledRow r;
  const std::size_t n = cfg.label_bits;
  r.label[0] = take_bits(s, 0, n < 64 ? n : 64);
  r.label[1] = n > 64 ? take_bits(s, 64, n - 64) : 0;
  r.tag = static_cast<std::uint32_t>(take_bits(s, n, cfg.tag_bits));
  return r;
}

void check_config(const GarbleConfig& cfg) {
  require(cfg.label_bits >= 1 && cfg.label_bits <= 128, Errc::parameter, "label bits must be in [1, 128]");
  require(cfg.tag_bits <= 32, Errc::parameter, "tag bits must be at most 32");
}

// Second label of a wire: random, with the opposite select bit.
WireLabel partner(const WireLabel& l, std::size_t n, Rng& rng) {
  WireLabel p = WireLabel::random(n, rng);
  p.w[0] = (p.w[0] & ~1ULL) | (l.select_bit() ? 0ULL : 1ULL);
  return p;
}

WireLabel xor_label(const std::array<std::uint64_t, 2>& a, const std::array<std::uint64_t, 2>& b) {
  return WireLabel{{a[0] ^ b[0], a[1] ^ b[1]}};
}

}  // namespace

BitVector WireLabel::bits(std::size_t n) const {
  BitVector v = BitVector::from_words(w, 128);
  return v.slice(0, n);
}

WireLabel WireLabel::from_bits(const BitVector& b) {
  require(b.size() <= 128, Errc::shape, "labels are at most 128 bits");
  WireLabel l;
  const auto words = b.words();
  for (std::size_t i = 0; i < words.size(); ++i) l.w[i] = words[i];
  return l;
}

WireLabel WireLabel::random(std::size_t n, Rng& rng) {
  const auto m = label_mask(n);
  return WireLabel{{rng.next() & m[0], rng.next() & m[1]}};
}

Topology topology_of(const BooleanCircuit& c) {
  Topology t{c.n_inputs(), c.gates(), c.outputs()};
  for (auto& g : t.gates) {
    if (g.op == GateOp::Xor) g.op = GateOp::And;
    if (g.op == GateOp::Const1) g.op = GateOp::Const0;
  }
  return t;
}

std::size_t GarbledCircuit::size_bits() const {
  const std::size_t lab = config.label_bits;
  return tables.size() * 4 * (lab + config.tag_bits) + constants.size() * lab + decode.size() * 2 * lab;
}

std::pair<GarbledCircuit, GarbleKey> gcircuit(const BooleanCircuit& c, Rng& rng, const GarbleConfig& cfg) {
  check_config(cfg);
  const std::size_t n = cfg.label_bits;
  std::vector<std::pair<WireLabel, WireLabel>> lab(c.n_wires());
  GarbleKey key{n, {}};
  for (std::size_t i = 0; i < c.n_inputs(); ++i) {
    const auto l0 = WireLabel::random(n, rng);
    lab[i] = {l0, partner(l0, n, rng)};
  }
  GarbledCircuit gc;
  gc.config = cfg;
  gc.top = topology_of(c);
  gc.tables.reserve(c.n_gates());
  for (std::size_t gi = 0; gi < c.n_gates(); ++gi) {
    const Gate& g = c.gates()[gi];
    const std::size_t wire = c.n_inputs() + gi;
    switch (g.op) {
      case GateOp::Not:
        lab[wire] = {lab[g.a].second, lab[g.a].first};
        break;
      case GateOp::Const0:
      case GateOp::Const1: {
        const auto l0 = WireLabel::random(n, rng);
        lab[wire] = {l0, partner(l0, n, rng)};
        gc.constants.push_back(g.op == GateOp::Const1 ? lab[wire].second : lab[wire].first);
        break;
      }
      case GateOp::And:
      case GateOp::Xor: {
        const auto l0 = WireLabel::random(n, rng);
        lab[wire] = {l0, partner(l0, n, rng)};
        std::array<GarbledRow, 4> table{};
        for (int va = 0; va < 2; ++va)
          for (int vb = 0; vb < 2; ++vb) {
            const WireLabel& la = va ? lab[g.a].second : lab[g.a].first;
            const WireLabel& lb = vb ? lab[g.b].second : lab[g.b].first;
            const bool out = g.op == GateOp::And ? (va & vb) : (va ^ vb);
            const WireLabel& lo = out ? lab[wire].second : lab[wire].first;
            GarbledRow p = pad(la, lb, gi, cfg);
            p.label = xor_label(p.label, lo.w).w;
            table[2 * la.select_bit() + lb.select_bit()] = p;
          }
        gc.tables.push_back(table);
        break;
      }
    }
  }
  for (auto o : c.outputs()) gc.decode.push_back(lab[o]);
  key.inputs.assign(lab.begin(), lab.begin() + static_cast<std::ptrdiff_t>(c.n_inputs()));
  return {std::move(gc), std::move(key)};
}

WireLabel ginput(const GarbleKey& key, std::size_t i, bool b) {
  require(i < key.inputs.size(), Errc::shape, "input index out of range");
  return b ? key.inputs[i].second : key.inputs[i].first;
}

std::vector<WireLabel> ginput_all(const GarbleKey& key, const BitVector& x) {
  require(x.size() == key.inputs.size(), Errc::shape, "input length does not match the key");
  std::vector<WireLabel> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(ginput(key, i, x.get(i)));
  return out;
}

BitVector geval(const GarbledCircuit& gc, const std::vector<WireLabel>& labels) {
  const auto& top = gc.top;
  require(labels.size() == top.n_inputs, Errc::shape, "one label per input wire is required");
  const auto mask = label_mask(gc.config.label_bits);
  const std::uint32_t tag_mask =
      gc.config.tag_bits == 32 ? ~0U : (1U << gc.config.tag_bits) - 1;
  std::vector<WireLabel> active(top.n_inputs + top.gates.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    active[i] = WireLabel{{labels[i].w[0] & mask[0], labels[i].w[1] & mask[1]}};
  std::size_t next_table = 0, next_const = 0;
  for (std::size_t gi = 0; gi < top.gates.size(); ++gi) {
    const Gate& g = top.gates[gi];
    const std::size_t wire = top.n_inputs + gi;
    switch (g.op) {
      case GateOp::Not: active[wire] = active[g.a]; break;
      case GateOp::Const0:
      case GateOp::Const1: active[wire] = gc.constants.at(next_const++); break;
      default: {
        const auto& la = active[g.a];
        const auto& lb = active[g.b];
        const auto& row = gc.tables.at(next_table++)[2 * la.select_bit() + lb.select_bit()];
        const GarbledRow p = pad(la, lb, gi, gc.config);
        if (((p.tag ^ row.tag) & tag_mask) != 0)
          fail(Errc::invalid_labels, "gate g" + std::to_string(gi) + " rejected its input labels");
        active[wire] = xor_label(p.label, row.label);
      }
    }
  }
  BitVector y(top.outputs.size());
  for (std::size_t j = 0; j < top.outputs.size(); ++j) {
    const auto& l = active[top.outputs[j]];
    if (l == gc.decode[j].second)
      y.set(j, true);
    else if (!(l == gc.decode[j].first))
      fail(Errc::invalid_labels, "output label matches neither decoding");
  }
  return y;
}

std::pair<std::vector<WireLabel>, GarbledCircuit> gsimulate(const BitVector& x, const BitVector& y,
                                                            const Topology& top, Rng& rng,
                                                            const GarbleConfig& cfg) {
  check_config(cfg);
  require(x.size() == top.n_inputs, Errc::shape, "x does not match the topology");
  require(y.size() == top.outputs.size(), Errc::shape, "y does not match the topology");
  const std::size_t n = cfg.label_bits;
  const auto mask = label_mask(n);
  std::vector<WireLabel> active(top.n_inputs + top.gates.size());
  for (std::size_t i = 0; i < top.n_inputs; ++i) active[i] = WireLabel::random(n, rng);
  GarbledCircuit gc;
  gc.config = cfg;
  gc.top = top;
  for (std::size_t gi = 0; gi < top.gates.size(); ++gi) {
    const Gate& g = top.gates[gi];
    const std::size_t wire = top.n_inputs + gi;
    switch (g.op) {
      case GateOp::Not: active[wire] = active[g.a]; break;
      case GateOp::Const0:
      case GateOp::Const1:
        active[wire] = WireLabel::random(n, rng);
        gc.constants.push_back(active[wire]);
        break;
      default: {
        active[wire] = WireLabel::random(n, rng);
        std::array<GarbledRow, 4> table{};
        for (auto& row : table) {
          row.label = {rng.next() & mask[0], rng.next() & mask[1]};
          row.tag = static_cast<std::uint32_t>(rng.next());
          if (cfg.tag_bits < 32) row.tag &= (1U << cfg.tag_bits) - 1;
        }
        const auto& la = active[g.a];
        const auto& lb = active[g.b];
        GarbledRow p = pad(la, lb, gi, cfg);
        p.label = xor_label(p.label, active[wire].w).w;
        table[2 * la.select_bit() + lb.select_bit()] = p;
        gc.tables.push_back(table);
      }
    }
  }
  for (std::size_t j = 0; j < top.outputs.size(); ++j) {
    const auto& l = active[top.outputs[j]];
    const auto other = partner(l, n, rng);
    gc.decode.push_back(y.get(j) ? std::make_pair(other, l) : std::make_pair(l, other));
  }
  std::vector<WireLabel> in(active.begin(), active.begin() + static_cast<std::ptrdiff_t>(top.n_inputs));
  return {std::move(in), std::move(gc)};
}

}  // namespace bsfe
