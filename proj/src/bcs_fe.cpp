#include "bsfe/bcs_fe.hpp"

#include <algorithm>

namespace bsfe {

std::uint64_t BcsParams::distributor_memory() const {
  return row_bits() + code_bits() + std::min(chunk_bits, row_bits());
}

void BcsParams::validate() const {
  require(n >= 1 && lambda >= 1 && chunk_bits >= 1, Errc::parameter, "n, lambda and the chunk size must be positive");
  if (ell() >= n)
    fail(Errc::parameter, "encoding length " + std::to_string(ell()) + " must be below n = " + std::to_string(n));
}

BcsKeys bcsfe_keygen(const BcsParams& p, Rng& rng, Ledger* distributor, Transcript* t) {
  require(p.n >= 1 && p.chunk_bits >= 1, Errc::parameter, "n and the chunk size must be positive");
  const std::size_t row = p.row_bits(), word = std::min(p.chunk_bits, row);
  const auto v_I = BitVector::random(p.code_bits(), rng);
  BitVector sk(row), data;
  const std::uint64_t kept = row + p.code_bits();
  for (std::size_t i = 0; i <= p.n; ++i) {
    for (std::size_t j = 0; j < row; j += word) {
      const std::size_t len = std::min(word, row - j);
      const auto w = BitVector::random(len, rng);
      if (distributor) distributor->set_current(kept + len, "keygen row");
      if (v_I.get(i))
        for (std::size_t b = 0; b < len; ++b)
          if (w.get(b)) sk.flip(j + b);
      data.append(w);
    }
    if (distributor) distributor->set_current(kept, "keygen row");
  }
  data.append(v_I);
  emit(t, "fe_setup", {{"scheme", "bcs"}, {"n", p.n}, {"stream_bits", data.size()}});
  return BcsKeys{BitStream(std::move(data), p.chunk_bits), std::move(sk)};
}

namespace {

struct EkState {
  BitMatrix W;
  BitMatrix V;
  BitVector v_I;
  BitVector acc;
  std::size_t rows_done = 0;
  std::size_t in_row = 0;
  std::size_t v_read = 0;
};

}  // namespace

BcsEncKey bcsfe_ek_receive(BitStream& mk, const BcsParams& p, Rng& rng, Ledger& ledger, Transcript* t) {
  return bcsfe_ek_receive(mk, p, BitMatrix::random(p.row_bits(), p.lambda, rng), ledger, t);
}

BcsEncKey bcsfe_ek_receive(BitStream& mk, const BcsParams& p, BitMatrix V, Ledger& ledger, Transcript* t) {
  const std::size_t row = p.row_bits(), rows = p.n + 1;
  require(mk.total_bits() == p.stream_bits(), Errc::shape, "master stream length does not match n");
  require(V.rows() == row && V.cols() == p.lambda, Errc::shape, "V must be (2n+1) x lambda");
  EkState init{BitMatrix(rows, p.lambda), std::move(V), BitVector(p.code_bits()), BitVector(p.lambda)};
  auto fold = [&](EkState& s, const BitVector& chunk, std::size_t offset) {
    for (std::size_t b = 0; b < chunk.size(); ++b) {
      const std::size_t k = offset + b;
      if (k < rows * row) {
        const std::size_t j = k % row;
        if (chunk.get(b)) s.acc ^= s.V.row(j);
        s.in_row = j + 1;
        if (j + 1 == row) {
          s.W.set_row(s.rows_done++, s.acc);
          s.acc = BitVector(p.lambda);
          s.in_row = 0;
        }
      } else {
        s.v_I.set(s.v_read++, chunk.get(b));
      }
    }
  };
  auto measure = [&](const EkState& s) -> std::uint64_t {
    return (row + s.rows_done + (s.in_row ? 1 : 0)) * p.lambda + s.v_read;
  };
  auto s = stream_fold(mk, std::move(init), fold, measure, ledger, t);
  return BcsEncKey{std::move(s.W), std::move(s.V), std::move(s.v_I)};
}

std::vector<BitVector> bcsfe_fk_receive(BitStream& mk, const std::vector<BitVector>& codes, const BcsParams& p,
                                        Ledger& ledger, Transcript* t) {
  const std::size_t row = p.row_bits(), rows = p.n + 1;
  require(mk.total_bits() == p.stream_bits(), Errc::shape, "master stream length does not match n");
  for (const auto& c : codes)
    require(c.size() == p.code_bits(), Errc::class_bound, "function code must have n+1 bits");
  std::vector<BitVector> keys(codes.size(), BitVector(row));
  auto fold = [&](std::vector<BitVector>& sk, const BitVector& chunk, std::size_t offset) {
    for (std::size_t b = 0; b < chunk.size(); ++b) {
      const std::size_t k = offset + b;
      if (k >= rows * row || !chunk.get(b)) continue;
      for (std::size_t q = 0; q < codes.size(); ++q)
        if (codes[q].get(k / row)) sk[q].flip(k % row);
    }
  };
  auto measure = [&](const std::vector<BitVector>&) -> std::uint64_t { return p.fk_memory(codes.size()); };
  return stream_fold(mk, std::move(keys), fold, measure, ledger, t);
}

BitVector bcsfe_fk_receive(BitStream& mk, const BitVector& code, const BcsParams& p, Ledger& ledger,
                           Transcript* t) {
  return bcsfe_fk_receive(mk, std::vector<BitVector>{code}, p, ledger, t).front();
}

namespace {

enum class CodeKind { circuit = 0, input = 1, identity = 3, invalid = 4 };

BitVector make_code(unsigned tag, const BitVector& payload, const BcsParams& p) {
  p.validate();
  BitVector c(p.code_bits());
  c.set(0, tag & 1U);
  c.set(1, (tag >> 1) & 1U);
  for (std::size_t i = 0; i < payload.size(); ++i) c.set(2 + i, payload.get(i));
  return c;
}

CodeKind code_kind(const BitVector& c, const BcsParams& p, BitVector& payload) {
  if (c.size() != p.code_bits()) return CodeKind::invalid;
  if (c == BitVector::ones(p.code_bits())) return CodeKind::identity;
  const unsigned tag = (c.get(0) ? 1U : 0U) | (c.get(1) ? 2U : 0U);
  std::size_t len = 0;
  if (tag == 0)
    len = p.cls.w();
  else if (tag == 1)
    len = p.cls.n_inputs;
  else
    return CodeKind::invalid;
  // Bits past the payload must be zero so each function has one code.
  if (!c.slice(2 + len, c.size() - 2 - len).is_zero()) return CodeKind::invalid;
  payload = c.slice(2, len);
  return tag == 0 ? CodeKind::circuit : CodeKind::input;
}

}  // namespace

BitVector bcs_circuit_code(const BooleanCircuit& c, const BcsParams& p) { return make_code(0, p.cls.encode(c), p); }

BitVector bcs_input_code(const BitVector& x, const BcsParams& p) {
  require(x.size() == p.cls.n_inputs, Errc::shape, "input length does not match the class");
  return make_code(1, x, p);
}

BitVector bcs_identity_code(const BcsParams& p) { return BitVector::ones(p.code_bits()); }

Program bcsfe_program(const BcsEncKey& k, const BitVector& mu, const BcsParams& p) {
  p.validate();
  require(mu.size() >= p.cls.n_outputs, Errc::shape, "message shorter than the function output");
  const std::size_t row = p.row_bits(), code = p.code_bits(), out = mu.size();
  const auto idW = vec_mat_mul(k.v_I, k.W);
  Program prog;
  prog.input_bits = row + code;
  prog.output_bits = 1 + out;
  prog.fn = [k, mu, p, idW, row, code, out](const BitVector& in) {
    BitVector r(1 + out);
    const auto y = in.slice(0, row), c = in.slice(row, code);
    const auto yV = vec_mat_mul(y, k.V);
    BitVector payload;
    BitVector value;
    switch (code_kind(c, p, payload)) {
      case CodeKind::identity:
        if (yV != idW) return r;
        value = mu;
        break;
      case CodeKind::circuit:
        if (yV != vec_mat_mul(c, k.W) || mu.size() != p.cls.n_inputs) return r;
        value = p.cls.apply(payload, mu);
        break;
      case CodeKind::input:
        if (yV != vec_mat_mul(c, k.W) || mu.size() != p.cls.w()) return r;
        value = p.cls.apply(mu, payload);
        break;
      case CodeKind::invalid:
        return r;
    }
    r.set(0, true);
    for (std::size_t i = 0; i < value.size(); ++i) r.set(1 + i, value.get(i));
    return r;
  };
  return prog;
}

WgbObfuscation bcsfe_enc(const BcsEncKey& k, const BitVector& mu, const BcsParams& p, Transcript* t) {
  auto obf = wgb_obfuscate(bcsfe_program(k, mu, p), p.stream_bits(), p.lambda, t, p.chunk_bits);
  emit(t, "fe_enc", {{"scheme", "bcs"}, {"message_bits", mu.size()}, {"stream_bits", p.stream_bits()}});
  return obf;
}

std::vector<std::optional<BitVector>> bcsfe_dec(const std::vector<std::pair<BitVector, BitVector>>& keys,
                                                WgbObfuscation& ct, const BcsParams& p, Transcript* t) {
  std::vector<std::optional<BitVector>> results;
  auto reader = ct.stream.read(t);
  // Evaluation happens during the transmission; the handle disappears with
  // the last chunk.
  reader.next();
  for (const auto& [sk_c, code] : keys) {
    BitVector in = sk_c;
    in.append(code);
    const auto y = ct.handle.eval(in);
    BitVector payload;
    const auto kind = code_kind(code, p, payload);
    emit(t, "fe_dec", {{"scheme", "bcs"}, {"ok", y.get(0)}});
    if (!y.get(0)) {
      results.emplace_back(std::nullopt);
      continue;
    }
    const std::size_t len = kind == CodeKind::identity ? y.size() - 1 : p.cls.n_outputs;
    results.emplace_back(y.slice(1, len));
  }
  while (reader.next()) {
  }
  return results;
}

std::optional<BitVector> bcsfe_dec(const BitVector& sk_c, const BitVector& code, WgbObfuscation& ct,
                                   const BcsParams& p, Transcript* t) {
  return bcsfe_dec({{sk_c, code}}, ct, p, t).front();
}

WgbFromFe wgb_from_fe_obfuscate(const BooleanCircuit& c, const BcsParams& p, Rng& rng, Transcript* t) {
  p.validate();
  const auto tt = p.cls.encode(c);
  auto keys = bcsfe_keygen(p, rng, nullptr, t);
  BitStream own = keys.mk;
  Ledger ledger("obfuscator", p.ek_memory(), Party::honest, "bits", t);
  const auto k = bcsfe_ek_receive(own, p, rng, ledger, t);
  return WgbFromFe{p, std::move(keys.mk), bcsfe_enc(k, tt, p, t)};
}

std::vector<BitVector> wgb_from_fe_eval(WgbFromFe& obf, const std::vector<BitVector>& xs, Transcript* t) {
  const auto& p = obf.params;
  std::vector<BitVector> codes;
  for (const auto& x : xs) codes.push_back(bcs_input_code(x, p));
  Ledger ledger("evaluator", p.fk_memory(codes.size()), Party::honest, "bits", t);
  const auto sks = bcsfe_fk_receive(obf.mk, codes, p, ledger, t);
  std::vector<std::pair<BitVector, BitVector>> keys;
  for (std::size_t i = 0; i < codes.size(); ++i) keys.emplace_back(sks[i], codes[i]);
  std::vector<BitVector> out;
  for (auto& y : bcsfe_dec(keys, obf.ct, p, t)) {
    require(y.has_value(), Errc::internal, "obfuscated evaluation rejected an honest key");
    out.push_back(std::move(*y));
  }
  return out;
}

BitVector wgb_from_fe_eval(WgbFromFe& obf, const BitVector& x, Transcript* t) {
  return wgb_from_fe_eval(obf, std::vector<BitVector>{x}, t).front();
}

}  // namespace bsfe
