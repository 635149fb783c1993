#include "bsfe/bqs_fe.hpp"

#include <cmath>

#include "bsfe/error.hpp"

namespace bsfe {

bool TruthTableClass::contains(const BooleanCircuit& c) const {
  return c.n_inputs() <= n_inputs && c.n_outputs() == n_outputs;
}

BitVector TruthTableClass::encode(const BooleanCircuit& c) const {
  require(contains(c), Errc::class_bound,
          "circuit with " + std::to_string(c.n_inputs()) + " inputs and " + std::to_string(c.n_outputs()) +
              " outputs is outside the class");
  return c.with_input_count(n_inputs).truth_table();
}

BitVector TruthTableClass::apply(const BitVector& tt, const BitVector& x) const {
  require(tt.size() == w() && x.size() == n_inputs, Errc::shape, "truth table or input has the wrong length");
  return tt.slice(x.to_u64() * n_outputs, n_outputs);
}

std::size_t BqsFeParams::m() const {
  require(r > 0 && s > 0, Errc::parameter, "s and r must be positive");
  auto m = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(static_cast<double>(s) / static_cast<double>(r)) - 1e-9));
  if (m < 2) m = 2;
  if (m % 2) ++m;
  return m;
}

unsigned BqsFeParams::field_degree() const {
  return ell ? ell : static_cast<unsigned>(std::max(lambda, cls.w()));
}

void BqsFeParams::validate() const {
  require(r < s, Errc::parameter, "r = " + std::to_string(r) + " must be below s = " + std::to_string(s));
  const unsigned d = field_degree();
  require(d <= 64, Errc::parameter, "field degree " + std::to_string(d) + " exceeds 64");
  require(d >= cls.w(), Errc::parameter,
          "class encoding of " + std::to_string(cls.w()) + " bits does not fit GF(2^" + std::to_string(d) + ")");
  // Any information-theoretic scheme needs honest memory above sqrt(s/r).
  const double floor_q = std::sqrt(static_cast<double>(s) / static_cast<double>(r));
  require(static_cast<double>(honest_memory()) >= floor_q, Errc::parameter,
          "honest memory " + std::to_string(honest_memory()) + " is below sqrt(s/r) = " + std::to_string(floor_q));
}

MasterSecret bqsfe_setup(const BqsFeParams& p, Rng& rng, Transcript* t) {
  p.validate();
  const std::size_t n = p.m() * p.r;
  const Field f = Field::standard(p.field_degree());
  MasterSecret msk{p, FieldMatrix::random(f, n, n, rng), {}};
  for (std::size_t i = 0; i <= 2 * p.r; ++i) msk.T.push_back(p.t0 + i * p.period);
  emit(t, "fe_setup",
       {{"scheme", "bqs"}, {"s", p.s}, {"r", p.r}, {"m", p.m()}, {"ell", p.field_degree()}, {"w", p.cls.w()}});
  return msk;
}

namespace {

void check_window(const MasterSecret& msk, std::size_t slot, std::uint64_t now, const char* what) {
  require(now >= msk.T[slot] && now < msk.T[slot + 1], Errc::schedule,
          std::string(what) + " outside its window [" + std::to_string(msk.T[slot]) + ", " +
              std::to_string(msk.T[slot + 1]) + "): now = " + std::to_string(now));
}

std::vector<std::uint64_t> words_of(const BitVector& bits, std::size_t count, unsigned ell) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = bits.slice(i * ell, ell).to_u64();
  return out;
}

BitVector bits_of(const std::vector<F2kElement>& xs) {
  BitVector out;
  for (const auto& x : xs) out.append(x.bits());
  return out;
}

}  // namespace

BroadcastHandle bqsfe_pk_send(const MasterSecret& msk, std::size_t i, std::uint64_t now, Transcript* t) {
  const auto& p = msk.params;
  require(i < p.r, Errc::schedule, "public-key broadcast index out of range");
  check_window(msk, i, now, "public-key broadcast");
  const std::size_t m = p.m(), n = m * p.r;
  const unsigned ell = p.field_degree();
  FieldMatrix block = msk.M.row_block(m * i, m);
  Program prog{n, m * ell, [block](const BitVector& x) { return bits_of(block.apply_binary(x)); }};
  if (t) t->set_tick(now);
  return br_setup(std::move(prog), p.s, msk.T[i + 1], ell, p.broadcast, t);
}

std::vector<BroadcastHandle> bqsfe_pk_phase(const MasterSecret& msk, Transcript* t) {
  std::vector<BroadcastHandle> hs;
  for (std::size_t i = 0; i < msk.params.r; ++i) hs.push_back(bqsfe_pk_send(msk, i, msk.T[i], t));
  return hs;
}

EncKey bqsfe_pk_receive(std::vector<BroadcastHandle>& handles, const BqsFeParams& p, Rng& rng, Ledger& ledger) {
  require(handles.size() == p.r, Errc::shape, "expected r public-key broadcasts");
  const std::size_t m = p.m(), n = m * p.r;
  const Field f = Field::standard(p.field_degree());
  BitVector v;
  do v = BitVector::random(n, rng);
  while (v.is_zero());
  EncKey k{v, {}};
  // One broadcast at a time: each evaluation holds its 12m units only
  // until its output is measured.
  for (auto& h : handles) {
    const auto y = h.eval(v, Party::honest, &ledger);
    for (auto w : words_of(y, m, f.degree())) k.Mv.push_back(f.element(w));
  }
  return k;
}

BroadcastHandle bqsfe_mk_send(const MasterSecret& msk, std::size_t i, std::uint64_t now, Transcript* t) {
  const auto& p = msk.params;
  require(i < p.r, Errc::schedule, "functional-key broadcast index out of range");
  check_window(msk, i + p.r, now, "functional-key broadcast");
  const std::size_t m = p.m();
  const unsigned ell = p.field_degree();
  std::vector<Polynomial> polys;
  for (std::size_t c = m * i; c < m * (i + 1); ++c) polys.push_back(msk.M.column_polynomial(c));
  const Field f = msk.M.field();
  Program prog{ell, m * ell, [polys, f](const BitVector& x) {
                 const auto e = f.embed(x);
                 BitVector out;
                 for (const auto& poly : polys) out.append(poly_eval(poly, e).bits());
                 return out;
               }};
  if (t) t->set_tick(now);
  return br_setup(std::move(prog), p.s, msk.T[i + p.r + 1], ell, p.broadcast, t);
}

std::vector<BroadcastHandle> bqsfe_mk_phase(const MasterSecret& msk, Transcript* t) {
  std::vector<BroadcastHandle> hs;
  for (std::size_t i = 0; i < msk.params.r; ++i) hs.push_back(bqsfe_mk_send(msk, i, msk.T[i + msk.params.r], t));
  return hs;
}

FuncKey bqsfe_mk_receive(std::vector<BroadcastHandle>& handles, const BqsFeParams& p, const BooleanCircuit& c,
                         Ledger& ledger) {
  require(handles.size() == p.r, Errc::shape, "expected r functional-key broadcasts");
  const Field f = Field::standard(p.field_degree());
  const auto tt = p.cls.encode(c);
  BitVector x = tt;
  x.resize(f.degree());
  FuncKey sk{f.embed(tt), {}};
  for (auto& h : handles) {
    const auto y = h.eval(x, Party::honest, &ledger);
    for (auto w : words_of(y, p.m(), f.degree())) sk.values.push_back(f.element(w));
  }
  return sk;
}

Program bqsfe_g_program(const EncKey& k, const BitVector& mu, const BqsFeParams& p) {
  require(mu.size() == p.cls.n_inputs, Errc::shape, "message length must equal the class input count");
  const Field f = Field::standard(p.field_degree());
  const std::size_t n = k.v.size(), w = p.cls.w(), ell = f.degree();
  require(k.Mv.size() == n, Errc::shape, "encryption key is inconsistent");
  const Polynomial pv(k.Mv);
  const auto cls = p.cls;
  const auto v = k.v;
  return Program{w + n * ell, 1 + cls.n_outputs, [=](const BitVector& in) {
                   const auto tt = in.slice(0, w);
                   auto sum = f.zero();
                   for (std::size_t i = 0; i < n; ++i)
                     if (v.get(i)) sum += f.element(in.slice(w + i * ell, ell).to_u64());
                   BitVector out(1 + cls.n_outputs);
                   if (sum == poly_eval(pv, f.embed(tt))) {
                     out.set(0, true);
                     const auto y = cls.apply(tt, mu);
                     for (std::size_t j = 0; j < y.size(); ++j) out.set(1 + j, y.get(j));
                   }
                   return out;
                 }};
}

std::vector<Wire> build_field_mul(CircuitBuilder& b, const Field& f, const std::vector<Wire>& x,
                                  const std::vector<Wire>& y) {
  const std::size_t d = f.degree();
  require(x.size() == d && y.size() == d, Errc::shape, "field operands have the wrong width");
  std::vector<Wire> prod(2 * d - 1, b.constant(false));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i + j] = b.xor_(prod[i + j], b.and_(x[i], y[j]));
  // x^k = x^(k-d) * (x^d) = x^(k-d) * reduction.
  for (std::size_t k = 2 * d - 2; k >= d; --k)
    for (std::size_t t = 0; t < d; ++t)
      if ((f.reduction() >> t) & 1U) prod[k - d + t] = b.xor_(prod[k - d + t], prod[k]);
  prod.resize(d);
  return prod;
}

BooleanCircuit bqsfe_g_circuit(const EncKey& k, const BitVector& mu, const BqsFeParams& p) {
  require(mu.size() == p.cls.n_inputs, Errc::shape, "message length must equal the class input count");
  const Field f = Field::standard(p.field_degree());
  const std::size_t n = k.v.size(), w = p.cls.w(), ell = f.degree();
  CircuitBuilder b(w + n * ell);
  auto konst = [&](std::uint64_t v) {
    std::vector<Wire> ws(ell);
    for (std::size_t j = 0; j < ell; ++j) ws[j] = b.constant(((v >> j) & 1U) != 0);
    return ws;
  };
  std::vector<Wire> c = b.inputs(0, w);
  while (c.size() < ell) c.push_back(b.constant(false));

  std::vector<Wire> sum = konst(0);
  for (std::size_t i = 0; i < n; ++i)
    if (k.v.get(i))
      for (std::size_t j = 0; j < ell; ++j) sum[j] = b.xor_(sum[j], b.input(w + i * ell + j));

  // Horner with the public-key coefficients baked in.
  std::vector<Wire> acc = konst(k.Mv.back().value());
  for (std::size_t j = n - 1; j-- > 0;) {
    acc = build_field_mul(b, f, acc, c);
    const auto cj = konst(k.Mv[j].value());
    for (std::size_t t = 0; t < ell; ++t) acc[t] = b.xor_(acc[t], cj[t]);
  }
  const Wire valid = b.equal(sum, acc);
  b.output(valid);
  const std::size_t row = mu.to_u64() * p.cls.n_outputs;
  for (std::size_t j = 0; j < p.cls.n_outputs; ++j) b.output(b.and_(valid, b.input(row + j)));
  return b.build();
}

BqsCiphertext bqsfe_enc(const EncKey& k, const BitVector& mu, const BqsFeParams& p, Rng& rng, Transcript* t) {
  BqsCiphertext ct;
  ct.backend = p.backend;
  ct.n_outputs = p.cls.n_outputs;
  if (p.backend == FeBackend::kil) {
    ct.kil.emplace(bqsfe_g_program(k, mu, p), t);
  } else {
    ct.yao.emplace(otp_yao_send(bqsfe_g_circuit(k, mu, p), p.otp, rng, t));
  }
  emit(t, "fe_enc", {{"scheme", "bqs"}, {"backend", p.backend == FeBackend::kil ? "kil" : "yao"}});
  return ct;
}

std::optional<BitVector> bqsfe_eval_raw(BqsCiphertext& ct, const BitVector& input, Rng& rng, Transcript* t) {
  BitVector out;
  if (ct.backend == FeBackend::kil) {
    out = ct.kil->eval(input);
  } else {
    out = otp_yao_receive(*ct.yao, input, rng, t).output;
  }
  if (!out.get(0)) return std::nullopt;
  return out.slice(1, ct.n_outputs);
}

std::optional<BitVector> bqsfe_dec(const FuncKey& sk, BqsCiphertext& ct, const BqsFeParams& p, Rng& rng,
                                   Transcript* t) {
  BitVector in = sk.c_enc.bits().slice(0, p.cls.w());
  for (const auto& y : sk.values) in.append(y.bits());
  auto out = bqsfe_eval_raw(ct, in, rng, t);
  emit(t, "fe_dec", {{"scheme", "bqs"}, {"ok", out.has_value()}, {"y", out ? out->to_string() : ""}});
  return out;
}

BqsFeRun bqsfe_run(const BqsFeParams& p, const BooleanCircuit& c, const BitVector& mu, std::uint64_t seed,
                   Transcript* t) {
  Rng setup = Rng::derive(seed, Stream::setup);
  Rng receiver = Rng::derive(seed, Stream::receiver);
  Rng sender = Rng::derive(seed, Stream::sender);
  const auto msk = bqsfe_setup(p, setup, t);
  Ledger pk_ledger("bqs-fe pk receiver", p.honest_memory(), Party::honest, "symbols", t);
  Ledger mk_ledger("bqs-fe mk receiver", p.honest_memory(), Party::honest, "symbols", t);
  if (p.broadcast.units == BroadcastUnits::bits) {
    pk_ledger = Ledger("bqs-fe pk receiver", p.honest_memory() * p.field_degree(), Party::honest, "bits", t);
    mk_ledger = Ledger("bqs-fe mk receiver", p.honest_memory() * p.field_degree(), Party::honest, "bits", t);
  }

  auto pk = bqsfe_pk_phase(msk, t);
  const auto k = bqsfe_pk_receive(pk, p, receiver, pk_ledger);
  for (auto& h : pk) h.tick(msk.T[p.r]);
  auto mk = bqsfe_mk_phase(msk, t);
  const auto sk = bqsfe_mk_receive(mk, p, c, mk_ledger);
  for (auto& h : mk) h.tick(msk.T[2 * p.r]);

  if (t) t->set_tick(msk.T[2 * p.r]);
  auto ct = bqsfe_enc(k, mu, p, sender, t);
  BqsFeRun run;
  run.output = bqsfe_dec(sk, ct, p, receiver, t);
  run.pk_peak = pk_ledger.peak();
  run.mk_peak = mk_ledger.peak();
  run.honest_violations = pk_ledger.violations() + mk_ledger.violations();
  return run;
}

}  // namespace bsfe
