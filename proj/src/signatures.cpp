#include "bsfe/signatures.hpp"

#include <bit>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

constexpr std::uint32_t kIv = 0x67452301U;

std::uint32_t round_constant(std::size_t i) {
  return static_cast<std::uint32_t>(splitmix64(0x5151 + i));
}

std::uint32_t feistel_f(std::uint32_t x) {
  return (std::rotl(x, 1) & std::rotl(x, 8)) ^ std::rotl(x, 2);
}

using Word = std::vector<Wire>;  // 32 wires, bit 0 first

Word const_word(CircuitBuilder& b, std::uint32_t v) {
  Word w(32);
  for (int i = 0; i < 32; ++i) w[i] = b.constant(((v >> i) & 1U) != 0);
  return w;
}

Word rotl_word(const Word& x, int k) {
  Word r(32);
  for (int j = 0; j < 32; ++j) r[j] = x[(j - k + 32) % 32];
  return r;
}

Word xor_word(CircuitBuilder& b, const Word& x, const Word& y) {
  Word r(32);
  for (int j = 0; j < 32; ++j) r[j] = b.xor_(x[j], y[j]);
  return r;
}

Word and_word(CircuitBuilder& b, const Word& x, const Word& y) {
  Word r(32);
  for (int j = 0; j < 32; ++j) r[j] = b.and_(x[j], y[j]);
  return r;
}

}  // namespace

BitVector ToyHash::operator()(const BitVector& msg) const {
  require(out_bits >= 1 && out_bits <= 64, Errc::parameter, "hash output must be 1..64 bits");
  std::uint32_t l = kIv;
  std::uint32_t r = static_cast<std::uint32_t>(msg.size());
  const std::size_t blocks = msg.size() == 0 ? 1 : (msg.size() + 31) / 32;
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t off = k * 32;
    const std::size_t len = off < msg.size() ? std::min<std::size_t>(32, msg.size() - off) : 0;
    l ^= static_cast<std::uint32_t>(len ? msg.slice(off, len).to_u64() : 0);
    for (std::size_t i = 0; i < rounds; ++i) {
      const std::uint32_t t = l;
      l = r ^ feistel_f(l) ^ round_constant(i);
      r = t;
    }
  }
  const std::uint64_t state = static_cast<std::uint64_t>(l) | (static_cast<std::uint64_t>(r) << 32);
  return BitVector::from_word(state, out_bits);
}

std::vector<Wire> ToyHash::build(CircuitBuilder& b, const std::vector<Wire>& msg) const {
  require(out_bits >= 1 && out_bits <= 64, Errc::parameter, "hash output must be 1..64 bits");
  Word l = const_word(b, kIv);
  Word r = const_word(b, static_cast<std::uint32_t>(msg.size()));
  const std::size_t blocks = msg.empty() ? 1 : (msg.size() + 31) / 32;
  for (std::size_t k = 0; k < blocks; ++k) {
    for (std::size_t j = 0; j < 32 && k * 32 + j < msg.size(); ++j) l[j] = b.xor_(l[j], msg[k * 32 + j]);
    for (std::size_t i = 0; i < rounds; ++i) {
      const Word f =
          xor_word(b, and_word(b, rotl_word(l, 1), rotl_word(l, 8)), rotl_word(l, 2));
      Word nl = xor_word(b, xor_word(b, r, f), const_word(b, round_constant(i)));
      r = std::move(l);
      l = std::move(nl);
    }
  }
  std::vector<Wire> out(out_bits);
  for (std::size_t j = 0; j < out_bits; ++j) out[j] = j < 32 ? l[j] : r[j - 32];
  return out;
}

BooleanCircuit ToyHash::circuit(std::size_t msg_bits) const {
  CircuitBuilder b(msg_bits);
  for (auto w : build(b, b.inputs(0, msg_bits))) b.output(w);
  return b.build();
}

std::size_t SigParams::slot_bits() const {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < max_sigs) ++bits;
  return bits;
}

BitVector Signature::to_bits(const SigParams& p) const {
  require(preimages.size() == p.hash_bits, Errc::shape, "signature has the wrong number of preimages");
  BitVector out = BitVector::from_word(slot, p.slot_bits());
  for (const auto& x : preimages) {
    require(x.size() == p.hash_bits, Errc::shape, "preimage has the wrong length");
    out.append(x);
  }
  return out;
}

Signature Signature::from_bits(const BitVector& bits, const SigParams& p) {
  require(bits.size() == p.signature_bits(), Errc::shape, "signature has the wrong length");
  Signature s;
  s.slot = p.slot_bits() ? bits.slice(0, p.slot_bits()).to_u64() : 0;
  for (std::size_t j = 0; j < p.hash_bits; ++j)
    s.preimages.push_back(bits.slice(p.slot_bits() + j * p.hash_bits, p.hash_bits));
  return s;
}

SigKeyPair::SigKeyPair(const SigParams& p, Rng& rng) {
  require(p.max_sigs >= 1, Errc::parameter, "need at least one signing slot");
  vk_.params = p;
  const auto h = p.hash();
  for (std::size_t slot = 0; slot < p.max_sigs; ++slot) {
    auto& sk = sk_.emplace_back(p.hash_bits);
    auto& vk = vk_.slots.emplace_back(p.hash_bits);
    for (std::size_t j = 0; j < p.hash_bits; ++j)
      for (int b = 0; b < 2; ++b) {
        sk[j][b] = BitVector::random(p.hash_bits, rng);
        vk[j][b] = h(sk[j][b]);
      }
  }
}

Signature SigKeyPair::sign(const BitVector& msg) {
  require(next_ < vk_.params.max_sigs, Errc::key_depleted,
          "all " + std::to_string(vk_.params.max_sigs) + " slots used");
  const auto d = vk_.params.hash()(msg);
  Signature s{next_, {}};
  for (std::size_t j = 0; j < d.size(); ++j) s.preimages.push_back(sk_[next_][j][d.get(j)]);
  ++next_;
  return s;
}

SigKeyPair sig_keygen(const SigParams& p, Rng& rng) { return SigKeyPair(p, rng); }

bool sig_verify(const VerifyKey& vk, const BitVector& msg, const Signature& sig) {
  const auto& p = vk.params;
  if (sig.slot >= p.max_sigs || sig.preimages.size() != p.hash_bits) return false;
  const auto h = p.hash();
  const auto d = h(msg);
  for (std::size_t j = 0; j < p.hash_bits; ++j) {
    if (sig.preimages[j].size() != p.hash_bits) return false;
    if (h(sig.preimages[j]) != vk.slots[sig.slot][j][d.get(j)]) return false;
  }
  return true;
}

Wire build_verify(CircuitBuilder& b, const VerifyKey& vk, const std::vector<Wire>& msg,
                  const std::vector<Wire>& sig) {
  const auto& p = vk.params;
  require(sig.size() == p.signature_bits(), Errc::shape, "signature wires have the wrong length");
  const auto h = p.hash();
  const auto d = h.build(b, msg);
  const std::vector<Wire> slot(sig.begin(), sig.begin() + static_cast<std::ptrdiff_t>(p.slot_bits()));

  std::vector<std::vector<Wire>> hashed;
  for (std::size_t j = 0; j < p.hash_bits; ++j) {
    const auto off = static_cast<std::ptrdiff_t>(p.slot_bits() + j * p.hash_bits);
    hashed.push_back(h.build(b, std::vector<Wire>(sig.begin() + off,
                                                  sig.begin() + off + static_cast<std::ptrdiff_t>(p.hash_bits))));
  }

  std::vector<Wire> accept_any;
  for (std::size_t i = 0; i < p.max_sigs; ++i) {
    std::vector<Wire> want(slot.size());
    for (std::size_t k = 0; k < slot.size(); ++k) want[k] = b.constant(((i >> k) & 1U) != 0);
    std::vector<Wire> conds{b.equal(slot, want)};
    for (std::size_t j = 0; j < p.hash_bits; ++j)
      for (std::size_t k = 0; k < p.hash_bits; ++k) {
        const Wire e = b.mux(d[j], b.constant(vk.slots[i][j][0].get(k)), b.constant(vk.slots[i][j][1].get(k)));
        conds.push_back(b.xnor(hashed[j][k], e));
      }
    accept_any.push_back(b.and_all(conds));
  }
  return b.or_all(accept_any);
}

BooleanCircuit verify_circuit(const VerifyKey& vk, std::size_t msg_bits) {
  CircuitBuilder b(msg_bits + vk.params.signature_bits());
  b.output(build_verify(b, vk, b.inputs(0, msg_bits), b.inputs(msg_bits, vk.params.signature_bits())));
  return b.build();
}

}  // namespace bsfe
