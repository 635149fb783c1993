// Acceptance checks, one line per criterion. Reference values come from the
// plain-integer fixture oracles and bool-vector linear algebra below, not
// from the library's own evaluators.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bsfe/bcs_fe.hpp"
#include "bsfe/bqs_fe.hpp"
#include "bsfe/broadcast.hpp"
#include "bsfe/bsfe.h"
#include "bsfe/fixtures.hpp"
#include "bsfe/garble.hpp"
#include "bsfe/harness.hpp"
#include "bsfe/ot.hpp"
#include "bsfe/otp.hpp"
#include "fixture_oracles.hpp"

using namespace bsfe;
using Clock = std::chrono::steady_clock;

namespace {

int g_failed = 0;

struct Outcome {
  bool ok = true;
  std::string detail;
  void need(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.ok) ++g_failed;
  std::printf("%s %2d %s [%.1fs] %s\n", o.ok ? "PASS" : "FAIL", id, title, seconds_since(t0), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Wilson score interval, 95%.
std::pair<double, double> wilson(std::uint64_t k, std::uint64_t n) {
  const double z = 1.959963984540054, p = double(k) / double(n), z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::uint64_t oracle(const std::string& name, const BitVector& x) { return fixture_oracle::expected(name, x); }

// Schoolbook GF(2^d): carry-less product, then long division by x^d + red.
std::uint64_t gf_mul(std::uint64_t a, std::uint64_t b, unsigned d, std::uint64_t red) {
  std::vector<bool> p(2 * d, false);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j)
      if (((a >> i) & 1U) && ((b >> j) & 1U)) p[i + j] = !p[i + j];
  for (unsigned k = 2 * d - 1; k >= d; --k) {
    if (!p[k]) continue;
    p[k] = false;
    for (unsigned t = 0; t < d; ++t)
      if ((red >> t) & 1U) p[k - d + t] = !p[k - d + t];
  }
  std::uint64_t out = 0;
  for (unsigned i = 0; i < d; ++i)
    if (p[i]) out |= std::uint64_t{1} << i;
  return out;
}

std::uint64_t poly_at(const std::vector<std::uint64_t>& coeff, std::uint64_t x, unsigned d, std::uint64_t red) {
  std::uint64_t acc = 0, pw = 1;
  for (auto c : coeff) {
    acc ^= gf_mul(c, pw, d, red);
    pw = gf_mul(pw, x, d, red);
  }
  return acc;
}

// Sum of products over minterms, for a random 4-input truth table.
BooleanCircuit circuit_from_table(std::uint64_t tt, std::size_t n) {
  CircuitBuilder b(n);
  std::vector<Wire> terms;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if (!((tt >> x) & 1U)) continue;
    std::vector<Wire> lits;
    for (std::size_t i = 0; i < n; ++i) lits.push_back((x >> i) & 1U ? b.input(i) : b.not_(b.input(i)));
    terms.push_back(b.and_all(lits));
  }
  b.output(b.or_all(terms));
  return b.build();
}

using Bits = std::vector<bool>;

Bits bools(const BitVector& v) {
  Bits out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.get(i);
  return out;
}

Bits stream_contents(BitStream s) {
  Bits out;
  auto r = s.read();
  while (auto c = r.next())
    for (std::size_t i = 0; i < c->size(); ++i) out.push_back(c->get(i));
  return out;
}

// Row vector times matrix given as rows.
Bits times(const Bits& v, const std::vector<Bits>& rows) {
  Bits acc(rows.at(0).size(), false);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i])
      for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = acc[j] != rows[i][j];
  return acc;
}

std::vector<Bits> matrix_rows(const BitMatrix& m) {
  std::vector<Bits> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(bools(m.row(i)));
  return rows;
}

ExperimentResult experiment(const std::string& scenario, const std::string& strategy, std::uint64_t trials,
                            std::map<std::string, std::int64_t> params = {}, std::uint64_t seed = 2024) {
  return run_experiment(ExperimentSpec{scenario, strategy, trials, seed, std::move(params)});
}

std::string capi_run(const std::string& scenario, const std::vector<std::pair<const char*, const char*>>& kv,
                     std::uint64_t& honest, int& status) {
  bsfe_config* cfg = nullptr;
  bsfe_config_new(&cfg);
  for (const auto& [k, v] : kv) bsfe_config_set(cfg, k, v);
  bsfe_result* r = nullptr;
  status = bsfe_run(cfg, scenario.c_str(), &r);
  std::string out = r ? bsfe_result_jsonl(r) : std::string("error: ") + bsfe_last_error();
  honest += r ? bsfe_result_honest_violations(r) : 0;
  bsfe_result_free(r);
  bsfe_config_free(cfg);
  return out;
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();
  const auto honest_start = honest_violation_total();

  criterion(1, "OT correctness: 10^3 runs at l=8, s=32, m=384 return s_c; < 5 s", [] {
    Outcome o;
    const auto t0 = Clock::now();
    OtParams p;
    p.ell = 8;
    p.s = 32;
    p.m = 384;
    int right = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      Rng setup = Rng::derive(seed, Stream::setup);
      const auto s0 = BitVector::random(8, setup), s1 = BitVector::random(8, setup);
      const bool c = setup.bit();
      Rng srng = Rng::derive(seed, Stream::sender), rrng = Rng::derive(seed, Stream::receiver);
      const auto run = run_ot(p, s0, s1, c, srng, rrng);
      right += run.y == (c ? s1 : s0) && run.receiver_peak == 0;
    }
    const double dt = seconds_since(t0);
    o.need(right == 1000, std::to_string(right) + "/1000 correct");
    o.need(dt < 5.0, fmt("took %.2f s", dt));
    if (o.ok) o.detail = "1000/1000, " + fmt("%.2f s", dt);
    return o;
  });

  criterion(2, "OT receiver security: sender transcripts for c=0 and c=1 byte-identical", [] {
    Outcome o;
    const auto p = ot_params_for(8, 32);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng setup = Rng::derive(seed, Stream::setup);
      const auto s0 = BitVector::random(8, setup), s1 = BitVector::random(8, setup);
      Transcript t0, t1;
      Rng sa = Rng::derive(seed, Stream::sender), sb = Rng::derive(seed, Stream::sender);
      Rng ra = Rng::derive(seed, Stream::receiver), rb = Rng::derive(seed, 77, 1);
      run_ot(p, s0, s1, false, sa, ra, &t0);
      run_ot(p, s0, s1, true, sb, rb, &t1);
      o.need(!t0.text().empty() && t0.text() == t1.text(), "transcripts differ at seed " + std::to_string(seed));
    }
    if (o.ok) o.detail = "100 seed pairs identical";
    return o;
  });

  criterion(3, "OT sender security: Wilson-95% upper bound <= 2*2^-8 per strategy over 10^5; < 60 s", [] {
    Outcome o;
    const auto t0 = Clock::now();
    const double bound = 2.0 / 256.0;
    std::string detail;
    for (const char* id : {"s-storage", "fixed-basis", "random-basis"}) {
      const auto r = experiment("ot-sender", id, 100000);
      const auto [lo, hi] = wilson(r.successes, r.trials);
      o.need(hi <= bound, std::string(id) + fmt(" upper %.5f > %.5f", hi, bound));
      o.need(r.honest_violations == 0 && r.adversary_violations == 0, std::string(id) + " ledger violation");
      detail += std::string(id) + fmt(" %.5f [%.5f,%.5f] ", r.estimate, lo, hi);
    }
    const double dt = seconds_since(t0);
    o.need(dt < 60.0, fmt("took %.1f s", dt));
    if (o.ok) o.detail = detail + fmt("bound %.5f", bound);
    return o;
  });

  criterion(4, "Garbling: geval agrees with the circuit on every input of every fixture <= 8 inputs; < 10 s", [] {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t points = 0;
    for (const auto& name : fixture_names()) {
      const auto c = fixture(name);
      if (c.n_inputs() > 8) continue;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.n_inputs()); ++x) {
        Rng rng = Rng::derive(x, Stream::sender, points);
        const auto in = BitVector::from_word(x, c.n_inputs());
        const auto [gc, key] = gcircuit(c, rng);
        const auto y = geval(gc, ginput_all(key, in));
        o.need(y.to_u64() == oracle(name, in) && y == eval_circuit(c, in), name + " on " + std::to_string(x));
        ++points;
      }
    }
    const double dt = seconds_since(t0);
    o.need(dt < 10.0, fmt("took %.1f s", dt));
    if (o.ok) o.detail = std::to_string(points) + " input points";
    return o;
  });

  criterion(5, "One-time program: otp_yao matches fixtures; kil handle one evaluation and expiry", [] {
    Outcome o;
    std::size_t runs = 0;
    for (const auto& name : fixture_names()) {
      const auto c = fixture(name);
      const std::uint64_t count = c.n_inputs() <= 4 ? (std::uint64_t{1} << c.n_inputs()) : 32;
      for (std::uint64_t i = 0; i < count; ++i) {
        Rng srng = Rng::derive(i, Stream::sender, runs), rrng = Rng::derive(i, Stream::receiver, runs);
        const auto x = c.n_inputs() <= 4 ? BitVector::from_word(i, c.n_inputs()) : BitVector::random(c.n_inputs(), rrng);
        auto tx = otp_yao_send(c, OtpParams{}, srng);
        const auto r = otp_yao_receive(tx, x, rrng);
        o.need(r.output.to_u64() == oracle(name, x), name + " mismatch");
        o.need(r.ledger_peak == 0, name + " receiver stored qubits");
        ++runs;
      }
      auto h = kil_create(c);
      const auto x = BitVector(c.n_inputs());
      o.need(kil_eval(h, x).to_u64() == oracle(name, x), name + " kil output");
      Errc second = Errc::internal, late = Errc::internal;
      try {
        kil_eval(h, x);
      } catch (const Error& e) {
        second = e.code();
      }
      auto h2 = kil_create(c);
      h2.close_window();
      try {
        kil_eval(h2, x);
      } catch (const Error& e) {
        late = e.code();
      }
      o.need(second == Errc::budget_exhausted, name + ": second evaluation allowed");
      o.need(late == Errc::expired, name + ": evaluation after the window allowed");
    }
    if (o.ok) o.detail = std::to_string(runs) + " one-time programs";
    return o;
  });

  criterion(6, "BQS-FE identity: sum_{v_i=1} P_i(C) = P_v(C) for 10^3 random (M, v, C), l=16, s=32, r=2", [] {
    Outcome o;
    BqsFeParams p;
    p.s = 32;
    p.r = 2;
    p.ell = 16;
    const unsigned d = 16;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      Rng setup = Rng::derive(seed, Stream::setup), rr = Rng::derive(seed, Stream::receiver);
      const auto msk = bqsfe_setup(p, setup);
      const auto red = msk.M.field().reduction();
      const auto c = circuit_from_table(setup.next() & 0xffff, 4);
      auto pk = bqsfe_pk_phase(msk);
      Ledger lp("encryptor", p.honest_memory(), Party::honest, "symbols");
      const auto k = bqsfe_pk_receive(pk, p, rr, lp);
      auto mk = bqsfe_mk_phase(msk);
      Ledger lm("decryptor", p.honest_memory(), Party::honest, "symbols");
      const auto sk = bqsfe_mk_receive(mk, p, c, lm);
      const std::uint64_t x = c.truth_table().to_u64();
      // Reference M v and P_v from the raw matrix.
      std::vector<std::uint64_t> mv(msk.M.rows(), 0);
      for (std::size_t r = 0; r < msk.M.rows(); ++r)
        for (std::size_t j = 0; j < msk.M.cols(); ++j)
          if (k.v.get(j)) mv[r] ^= msk.M.raw(r, j);
      std::uint64_t lhs = 0;
      for (std::size_t i = 0; i < sk.values.size(); ++i)
        if (k.v.get(i)) lhs ^= sk.values[i].value();
      const auto pv = poly_at(mv, x, d, red);
      o.need(lhs == pv, "identity fails at seed " + std::to_string(seed));
      for (std::size_t r = 0; r < mv.size(); ++r) o.need(k.Mv[r].value() == mv[r], "M v wrong");
      o.need(sk.c_enc.value() == x, "circuit encoding is not the truth table");
      o.need(lp.ok() && lm.ok(), "honest ledger violation");
    }
    if (o.ok) o.detail = "1000/1000";
    return o;
  });

  criterion(7, "BQS-FE end to end on fixtures; honest peak <= 24*sqrt(s/r)", [] {
    Outcome o;
    std::size_t runs = 0;
    std::uint64_t worst = 0;
    std::string skipped;
    const double figure = 24.0 * std::sqrt(32.0 / 2.0);
    for (const auto& name : fixture_names()) {
      const auto c = fixture(name);
      BqsFeParams p;
      p.s = 32;
      p.r = 2;
      p.lambda = 16;
      p.cls = TruthTableClass{std::max<std::size_t>(c.n_inputs(), 1), c.n_outputs()};
      if (p.cls.w() > 64) {
        skipped += name + " ";
        continue;
      }
      for (auto backend : {FeBackend::kil, FeBackend::yao}) {
        p.backend = backend;
        for (std::uint64_t seed = 0; seed < (backend == FeBackend::kil ? 10U : 2U); ++seed) {
          Rng mr = Rng::derive(seed, Stream::challenger, runs);
          const auto mu = BitVector::random(p.cls.n_inputs, mr);
          const auto run = bqsfe_run(p, c, mu, seed * 1000 + runs);
          o.need(run.output && run.output->to_u64() == oracle(name, mu), name + " wrong output");
          worst = std::max({worst, run.pk_peak, run.mk_peak});
          o.need(double(run.pk_peak) <= figure && double(run.mk_peak) <= figure, name + " over the memory figure");
          o.need(run.honest_violations == 0, name + " honest violation");
          ++runs;
        }
      }
    }
    if (o.ok)
      o.detail = std::to_string(runs) + fmt(" runs, peak %.0f <= %.0f", double(worst), figure) +
                 (skipped.empty() ? "" : "; truth table wider than the field: " + skipped);
    return o;
  });

  criterion(8, "Broadcast: adversary evaluations capped at floor(s/(2 m_out)); s=128, m_out=16 -> 4", [] {
    Outcome o;
    for (auto [s, m_out] : std::vector<std::pair<std::size_t, std::size_t>>{{128, 16}, {128, 8}, {100, 7}, {64, 32}, {31, 16}}) {
      Program id;
      id.input_bits = m_out;
      id.output_bits = m_out;
      id.fn = [](const BitVector& x) { return x; };
      auto h = br_setup(id, s, 10);
      const std::size_t cap = s / (2 * m_out);
      std::size_t done = 0;
      for (;;) {
        try {
          br_eval(h, BitVector(m_out), Party::adversary);
          ++done;
        } catch (const Error& e) {
          o.need(e.code() == Errc::budget_exhausted, "unexpected error");
          break;
        }
        if (done > cap + 1) break;
      }
      o.need(done == cap, fmt("s=%.0f m_out=%.0f allowed %.0f", double(s), double(m_out), double(done)));
      if (s == 128 && m_out == 16) o.need(done == 4, "s=128, m_out=16 did not give 4");
    }
    if (o.ok) o.detail = "5 configurations exact";
    return o;
  });

  criterion(9, "CBQS-FE IND game: estimates <= 0.55 over 10^3; disqualification; reveal within 2 sigma; < 3 min", [] {
    Outcome o;
    const auto t0 = Clock::now();
    std::string detail;
    const auto ids = ind_strategy_ids();
    o.need(ids.size() >= 5, "fewer than five registered strategies");
    for (const auto& id : ids) {
      const auto r = experiment("cbqs-ind", id, 1000);
      const auto without = r.extra.at("without_reveal").get<std::uint64_t>();
      const double p1 = double(r.successes) / 1000.0, p0 = double(without) / 1000.0;
      const double sigma = std::sqrt(p0 * (1 - p0) / 1000.0);
      o.need(p1 <= 0.55 && p0 <= 0.55, id + fmt(" estimate %.3f / %.3f", p1, p0));
      o.need(std::fabs(p1 - p0) <= 2 * sigma, id + fmt(" reveal moved %.3f -> %.3f (2 sigma %.4f)", p0, p1, 2 * sigma));
      o.need(r.honest_violations == 0, id + " honest violation");
      if (id == "disqualified") {
        o.need(r.extra.at("disqualified").get<std::uint64_t>() == 1000, "disqualification not applied to every game");
        o.need(r.successes == 0 && without == 0, "disqualified adversary scored");
      }
      detail += id + fmt(" %.3f/%.3f ", p1, p0);
    }
    const double dt = seconds_since(t0);
    o.need(dt < 180.0, fmt("took %.0f s", dt));
    if (o.ok) o.detail = detail + fmt("(%.0f s)", dt);
    return o;
  });

  criterion(10, "BCS-FE: both branches on fixtures; (c M_x) V = c (M_x V) over 10^3 seeds; forgetting 0/10^3 vs 10^3/10^3", [] {
    Outcome o;
    BcsParams p;
    std::size_t runs = 0;
    for (const auto& name : fixture_names()) {
      const auto c = fixture(name);
      if (c.n_inputs() > 4 || c.n_outputs() > 3) continue;
      p.cls = TruthTableClass{4, c.n_outputs()};
      for (std::uint64_t m = 0; m < 16; ++m) {
        Rng rng = Rng::derive(m, Stream::setup, runs);
        auto keys = bcsfe_keygen(p, rng);
        BitStream for_ek = keys.mk, for_fk = keys.mk;
        Ledger le("encryptor", p.ek_memory(), Party::honest, "bits");
        const auto k = bcsfe_ek_receive(for_ek, p, rng, le);
        const auto code = bcs_circuit_code(c, p);
        Ledger lf("decryptor", p.fk_memory(), Party::honest, "bits");
        const auto sk_c = bcsfe_fk_receive(for_fk, code, p, lf);
        const auto mu = BitVector::from_word(m, 4);
        auto ct = bcsfe_enc(k, mu, p);
        const auto out = bcsfe_dec({{sk_c, code}, {keys.sk, bcs_identity_code(p)}}, ct, p);
        o.need(out[0] && out[0]->to_u64() == oracle(name, mu), name + " functional branch");
        o.need(out[1] && *out[1] == mu, name + " identity branch");
        ++runs;
      }
    }
    BcsParams q;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      Rng rng = Rng::derive(seed, Stream::setup, 10);
      auto keys = bcsfe_keygen(q, rng);
      BitStream for_ek = keys.mk, for_fk = keys.mk;
      const auto V = BitMatrix::random(q.row_bits(), q.lambda, rng);
      Ledger le("encryptor", q.ek_memory(), Party::honest, "bits");
      const auto k = bcsfe_ek_receive(for_ek, q, V, le);
      const auto c = BitVector::random(q.code_bits(), rng);
      Ledger lf("decryptor", q.fk_memory(), Party::honest, "bits");
      const auto sk_c = bcsfe_fk_receive(for_fk, c, q, lf);
      const auto Vr = matrix_rows(V), Wr = matrix_rows(k.W);
      o.need(times(bools(sk_c), Vr) == times(bools(c), Wr), "(c M_x) V != c (M_x V) at seed " + std::to_string(seed));
      o.need(times(bools(keys.sk), Vr) == times(bools(k.v_I), Wr), "identity-branch product fails");
      if (seed < 20) {
        // Full reference for M_x from the stream itself.
        const auto all = stream_contents(keys.mk);
        std::vector<Bits> rows;
        for (std::size_t i = 0; i <= q.n; ++i)
          rows.emplace_back(all.begin() + i * q.row_bits(), all.begin() + (i + 1) * q.row_bits());
        const Bits v_I(all.begin() + (q.n + 1) * q.row_bits(), all.end());
        o.need(times(bools(c), rows) == bools(sk_c), "sk_C is not c M_x");
        o.need(times(v_I, rows) == bools(keys.sk), "sk is not v_I M_x");
        for (std::size_t i = 0; i <= q.n; ++i) o.need(times(rows[i], Vr) == Wr[i], "W row is not x_i V");
      }
    }
    const auto prefix = experiment("bcs-forget", "prefix", 1000, {{"n", 64}});
    const auto full = experiment("bcs-forget", "full", 1000, {{"n", 64}});
    o.need(prefix.successes == 0, std::to_string(prefix.successes) + "/1000 prefix recoveries");
    o.need(full.successes == 1000, std::to_string(full.successes) + "/1000 control recoveries");
    o.need(prefix.honest_violations == 0 && full.honest_violations == 0, "honest violation");
    if (o.ok)
      o.detail = std::to_string(runs) + " fixture runs, 1000 identity seeds, prefix 0/1000, control 1000/1000";
    return o;
  });

  criterion(11, "WGB from FE: eval(obf(C), x) = C(x) on every input of the 4-bit-input fixtures", [] {
    Outcome o;
    std::size_t points = 0;
    BcsParams p;
    std::uint64_t seed = 0;
    for (const auto& name : fixture_names()) {
      const auto c = fixture(name);
      if (c.n_inputs() > 4 || c.n_outputs() > 3) continue;
      p.cls = TruthTableClass{4, c.n_outputs()};
      Rng rng = Rng::derive(++seed, Stream::setup);
      auto obf = wgb_from_fe_obfuscate(c, p, rng);
      std::vector<BitVector> xs;
      for (std::uint64_t x = 0; x < 16; ++x) xs.push_back(BitVector::from_word(x, 4));
      const auto ys = wgb_from_fe_eval(obf, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) o.need(ys[i].to_u64() == oracle(name, xs[i]), name + " mismatch");
      points += xs.size();
    }
    if (o.ok) o.detail = std::to_string(points) + " points";
    return o;
  });

  criterion(12, "Global: zero honest violations; scenario suite byte-identical across two runs", [&] {
    Outcome o;
    const std::vector<std::pair<std::string, std::vector<std::pair<const char*, const char*>>>> suite{
        {"run-ot", {{"seed", "3"}}},
        {"run-otp", {{"seed", "3"}}},
        {"run-bqs-fe", {{"seed", "3"}}},
        {"run-bqs-fe", {{"seed", "3"}, {"backend", "yao"}, {"trials", "1"}}},
        {"run-cbqs-fe", {{"seed", "3"}}},
        {"run-bcs-fe", {{"seed", "3"}}},
        {"run-wgb", {{"seed", "3"}}},
        {"attack:ot-sender", {{"seed", "3"}, {"trials", "2000"}}},
        {"attack:cbqs-ind", {{"seed", "3"}, {"trials", "20"}}},
        {"attack:bcs-forget", {{"seed", "3"}, {"trials", "50"}}},
    };
    std::uint64_t api_honest = 0;
    std::size_t bytes = 0;
    for (const auto& [name, kv] : suite) {
      int s1 = 0, s2 = 0;
      const auto a = capi_run(name, kv, api_honest, s1);
      const auto b = capi_run(name, kv, api_honest, s2);
      o.need(s1 == BSFE_OK && s2 == BSFE_OK, name + " status " + bsfe_status_name(s1));
      o.need(a == b, name + " output differs between runs");
      bytes += a.size();
    }
    const auto in_process = honest_violation_total() - honest_start;
    o.need(api_honest == 0, std::to_string(api_honest) + " honest violations through the C API");
    o.need(in_process == 0, std::to_string(in_process) + " honest violations in this process");
    if (o.ok) o.detail = std::to_string(suite.size()) + " scenarios, " + std::to_string(bytes) + " JSONL bytes each run";
    return o;
  });

  std::printf("%s: %d failed, %.0f s total\n", g_failed ? "FAIL" : "PASS", g_failed, seconds_since(suite_start));
  return g_failed ? 1 : 0;
}
