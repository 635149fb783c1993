#include "bsfe/circuit.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::string at_line(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end;
}

bool parse_op(std::string_view s, GateOp& op) {
  static constexpr std::pair<std::string_view, GateOp> kOps[] = {
      {"AND", GateOp::And},       {"XOR", GateOp::Xor},       {"NOT", GateOp::Not},
      {"CONST0", GateOp::Const0}, {"CONST1", GateOp::Const1},
  };
  for (auto [name, o] : kOps)
    if (s == name) {
      op = o;
      return true;
    }
  return false;
}

struct Statement {
  std::size_t line;
  std::vector<std::string> tokens;
};

std::string wire_name(std::size_t n_inputs, std::uint32_t w) {
  if (w < n_inputs) return "in" + std::to_string(w);
  return "g" + std::to_string(w - n_inputs);
}

void put_bits(BitVector& v, std::size_t& pos, std::uint64_t value, std::size_t width) {
  for (std::size_t k = 0; k < width; ++k) v.set(pos + k, ((value >> k) & 1U) != 0);
  pos += width;
}

std::uint64_t get_bits(const BitVector& v, std::size_t& pos, std::size_t width) {
  std::uint64_t value = 0;
  for (std::size_t k = 0; k < width; ++k)
    if (v.get(pos + k)) value |= std::uint64_t{1} << k;
  pos += width;
  return value;
}

}  // namespace

std::string_view gate_op_name(GateOp op) {
  switch (op) {
    case GateOp::And: return "AND";
    case GateOp::Xor: return "XOR";
    case GateOp::Not: return "NOT";
    case GateOp::Const0: return "CONST0";
    case GateOp::Const1: return "CONST1";
  }
  return "?";
}

unsigned gate_arity(GateOp op) {
  switch (op) {
    case GateOp::And:
    case GateOp::Xor: return 2;
    case GateOp::Not: return 1;
    default: return 0;
  }
}

BooleanCircuit::BooleanCircuit(std::size_t n_inputs, std::vector<Gate> gates,
                               std::vector<std::uint32_t> outputs)
    : n_inputs_(n_inputs), gates_(std::move(gates)), outputs_(std::move(outputs)) {
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    require(static_cast<unsigned>(g.op) <= 4, Errc::syntax, "unknown gate op");
    const std::size_t self = n_inputs_ + i;
    const unsigned arity = gate_arity(g.op);
    if ((arity >= 1 && g.a >= self) || (arity >= 2 && g.b >= self))
      fail(Errc::cycle, "gate g" + std::to_string(i) + " reads a later wire");
  }
  for (auto o : outputs_) require(o < n_wires(), Errc::cycle, "output refers to an undefined wire");
}

std::size_t BooleanCircuit::and_count() const {
  std::size_t c = 0;
  for (const auto& g : gates_) c += g.op == GateOp::And;
  return c;
}

BitVector BooleanCircuit::eval(const BitVector& x) const {
  if (x.size() != n_inputs_)
    fail(Errc::shape, "circuit takes " + std::to_string(n_inputs_) + " inputs, got " + std::to_string(x.size()));
  std::vector<std::uint8_t> w(n_wires());
  for (std::size_t i = 0; i < n_inputs_; ++i) w[i] = x.get(i);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    std::uint8_t v = 0;
    switch (g.op) {
      case GateOp::And: v = w[g.a] & w[g.b]; break;
      case GateOp::Xor: v = w[g.a] ^ w[g.b]; break;
      case GateOp::Not: v = w[g.a] ^ 1U; break;
      case GateOp::Const0: v = 0; break;
      case GateOp::Const1: v = 1; break;
    }
    w[n_inputs_ + i] = v;
  }
  BitVector out(outputs_.size());
  for (std::size_t j = 0; j < outputs_.size(); ++j) out.set(j, w[outputs_[j]] != 0);
  return out;
}

std::vector<std::uint64_t> BooleanCircuit::eval_sliced(std::span<const std::uint64_t> inputs) const {
  require(inputs.size() == n_inputs_, Errc::shape, "sliced input count mismatch");
  std::vector<std::uint64_t> w(n_wires());
  for (std::size_t i = 0; i < n_inputs_; ++i) w[i] = inputs[i];
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    std::uint64_t v = 0;
    switch (g.op) {
      case GateOp::And: v = w[g.a] & w[g.b]; break;
      case GateOp::Xor: v = w[g.a] ^ w[g.b]; break;
      case GateOp::Not: v = ~w[g.a]; break;
      case GateOp::Const0: v = 0; break;
      case GateOp::Const1: v = ~std::uint64_t{0}; break;
    }
    w[n_inputs_ + i] = v;
  }
  std::vector<std::uint64_t> out(outputs_.size());
  for (std::size_t j = 0; j < outputs_.size(); ++j) out[j] = w[outputs_[j]];
  return out;
}

BitVector BooleanCircuit::truth_table() const {
  require(n_inputs_ <= 24, Errc::class_bound, "truth table limited to 24 inputs");
  const std::size_t rows = std::size_t{1} << n_inputs_;
  const std::size_t nout = outputs_.size();
  BitVector tt(rows * nout);
  // Lane k of a 64-row block is row base+k; the low six input bits follow
  // the standard bit-slice patterns, the rest are constant per block.
  static constexpr std::uint64_t kLanes[6] = {0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL,
                                              0xf0f0f0f0f0f0f0f0ULL, 0xff00ff00ff00ff00ULL,
                                              0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
  std::vector<std::uint64_t> in(n_inputs_);
  for (std::size_t base = 0; base < rows; base += 64) {
    for (std::size_t i = 0; i < n_inputs_; ++i)
      in[i] = i < 6 ? kLanes[i] : (((base >> i) & 1U) ? ~std::uint64_t{0} : 0);
    const auto out = eval_sliced(in);
    const std::size_t lanes = rows - base < 64 ? rows - base : 64;
    for (std::size_t k = 0; k < lanes; ++k)
      for (std::size_t j = 0; j < nout; ++j)
        if ((out[j] >> k) & 1U) tt.set((base + k) * nout + j, true);
  }
  return tt;
}

BooleanCircuit BooleanCircuit::with_input_count(std::size_t n) const {
  require(n >= n_inputs_, Errc::shape, "cannot drop circuit inputs");
  const auto shift = static_cast<std::uint32_t>(n - n_inputs_);
  auto remap = [&](std::uint32_t w) { return w < n_inputs_ ? w : w + shift; };
  std::vector<Gate> gates = gates_;
  for (auto& g : gates) {
    const unsigned arity = gate_arity(g.op);
    if (arity >= 1) g.a = remap(g.a);
    if (arity >= 2) g.b = remap(g.b);
  }
  std::vector<std::uint32_t> outs;
  outs.reserve(outputs_.size());
  for (auto o : outputs_) outs.push_back(remap(o));
  return BooleanCircuit(n, std::move(gates), std::move(outs));
}

BitVector eval_circuit(const BooleanCircuit& c, const BitVector& x) { return c.eval(x); }

BooleanCircuit parse_circuit(std::string_view text) {
  std::vector<Statement> stmts;
  {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      ++line_no;
      pos = end + 1;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      std::istringstream ss{std::string(line)};
      Statement st{line_no, {}};
      for (std::string tok; ss >> tok;) st.tokens.push_back(tok);
      if (!st.tokens.empty()) stmts.push_back(std::move(st));
      if (end == text.size()) break;
    }
  }
  require(!stmts.empty(), Errc::syntax, "empty circuit");

  const Statement& head = stmts.front();
  std::size_t n_inputs = 0;
  if (head.tokens[0] != "in" || head.tokens.size() != 2 || !parse_index(head.tokens[1], n_inputs))
    fail(Errc::syntax, at_line(head.line, "expected 'in <count>' as the first statement"));

  std::size_t total_gates = 0;
  for (std::size_t k = 1; k < stmts.size(); ++k)
    if (stmts[k].tokens[0] != "out") ++total_gates;

  std::vector<Gate> gates;
  std::vector<std::uint32_t> outputs;
  bool saw_out = false;

  auto resolve = [&](const std::string& tok, std::size_t line, std::size_t limit) -> std::uint32_t {
    std::size_t idx = 0;
    if (tok.rfind("in", 0) == 0 && parse_index(std::string_view(tok).substr(2), idx)) {
      if (idx >= n_inputs) fail(Errc::cycle, at_line(line, "undefined wire " + tok));
      return static_cast<std::uint32_t>(idx);
    }
    if (tok.rfind("g", 0) == 0 && parse_index(std::string_view(tok).substr(1), idx)) {
      if (idx >= total_gates) fail(Errc::cycle, at_line(line, "undefined wire " + tok));
      if (idx >= limit) fail(Errc::cycle, at_line(line, "cycle: " + tok + " is not defined yet"));
      return static_cast<std::uint32_t>(n_inputs + idx);
    }
    fail(Errc::syntax, at_line(line, "bad wire name '" + tok + "'"));
  };

  for (std::size_t k = 1; k < stmts.size(); ++k) {
    const auto& st = stmts[k];
    const auto& t = st.tokens;
    if (t[0] == "in") fail(Errc::syntax, at_line(st.line, "duplicate 'in' statement"));
    if (t[0] == "out") {
      if (t.size() < 2) fail(Errc::syntax, at_line(st.line, "'out' needs at least one wire"));
      for (std::size_t j = 1; j < t.size(); ++j) outputs.push_back(resolve(t[j], st.line, total_gates));
      saw_out = true;
      continue;
    }
    if (saw_out) fail(Errc::syntax, at_line(st.line, "gate after 'out'"));
    std::size_t id = 0;
    if (t[0].rfind("g", 0) != 0 || !parse_index(std::string_view(t[0]).substr(1), id))
      fail(Errc::syntax, at_line(st.line, "expected 'g<i> = OP ...'"));
    if (id != gates.size())
      fail(Errc::syntax, at_line(st.line, "gate ids must be consecutive from g0; expected g" +
                                              std::to_string(gates.size())));
    if (t.size() < 3 || t[1] != "=") fail(Errc::syntax, at_line(st.line, "missing '='"));
    Gate g;
    if (!parse_op(t[2], g.op)) fail(Errc::syntax, at_line(st.line, "unknown op '" + t[2] + "'"));
    const unsigned arity = gate_arity(g.op);
    if (t.size() != 3 + arity)
      fail(Errc::syntax, at_line(st.line, std::string(gate_op_name(g.op)) + " takes " +
                                              std::to_string(arity) + " wire(s)"));
    if (arity >= 1) g.a = resolve(t[3], st.line, id);
    if (arity >= 2) g.b = resolve(t[4], st.line, id);
    gates.push_back(g);
  }
  require(saw_out, Errc::syntax, "missing 'out' statement");
  return BooleanCircuit(n_inputs, std::move(gates), std::move(outputs));
}

std::string emit_circuit(const BooleanCircuit& c) {
  std::string s = "in " + std::to_string(c.n_inputs()) + "\n";
  for (std::size_t i = 0; i < c.n_gates(); ++i) {
    const Gate& g = c.gates()[i];
    s += "g" + std::to_string(i) + " = " + std::string(gate_op_name(g.op));
    const unsigned arity = gate_arity(g.op);
    if (arity >= 1) s += " " + wire_name(c.n_inputs(), g.a);
    if (arity >= 2) s += " " + wire_name(c.n_inputs(), g.b);
    s += "\n";
  }
  s += "out";
  for (auto o : c.outputs()) s += " " + wire_name(c.n_inputs(), o);
  s += "\n";
  return s;
}

BooleanCircuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

std::size_t encoded_size(std::size_t n_gates, std::size_t n_outputs) {
  return kEncHeaderBits + kEncGateBits * n_gates + kEncRefBits * n_outputs;
}

std::size_t encoded_size(const BooleanCircuit& c) { return encoded_size(c.n_gates(), c.n_outputs()); }

BitVector encode_circuit(const BooleanCircuit& c, std::size_t w) {
  constexpr std::size_t kMax = 0xffff;
  require(c.n_inputs() <= kMax && c.n_gates() <= kMax && c.n_outputs() <= kMax &&
              c.n_wires() <= kMax + 1,
          Errc::class_bound, "circuit too large for 16-bit fields");
  const std::size_t need = encoded_size(c);
  require(need <= w, Errc::class_bound,
          "circuit needs " + std::to_string(need) + " bits, class width is " + std::to_string(w));
  BitVector v(w);
  std::size_t pos = 0;
  put_bits(v, pos, c.n_inputs(), 16);
  put_bits(v, pos, c.n_gates(), 16);
  put_bits(v, pos, c.n_outputs(), 16);
  for (const Gate& g : c.gates()) {
    const unsigned arity = gate_arity(g.op);
    put_bits(v, pos, static_cast<std::uint64_t>(g.op), 3);
    put_bits(v, pos, arity >= 1 ? g.a : 0, 16);
    put_bits(v, pos, arity >= 2 ? g.b : 0, 16);
  }
  for (auto o : c.outputs()) put_bits(v, pos, o, 16);
  return v;
}

BooleanCircuit decode_circuit(const BitVector& bits) {
  require(bits.size() >= kEncHeaderBits, Errc::syntax, "encoding shorter than its header");
  std::size_t pos = 0;
  const std::size_t n_in = get_bits(bits, pos, 16);
  const std::size_t n_gates = get_bits(bits, pos, 16);
  const std::size_t n_out = get_bits(bits, pos, 16);
  const std::size_t need = encoded_size(n_gates, n_out);
  require(need <= bits.size(), Errc::syntax, "encoding truncated");
  std::vector<Gate> gates(n_gates);
  for (auto& g : gates) {
    const auto op = get_bits(bits, pos, 3);
    require(op <= 4, Errc::syntax, "malformed encoding: bad op");
    g.op = static_cast<GateOp>(op);
    g.a = static_cast<std::uint32_t>(get_bits(bits, pos, 16));
    g.b = static_cast<std::uint32_t>(get_bits(bits, pos, 16));
    const unsigned arity = gate_arity(g.op);
    require((arity >= 1 || g.a == 0) && (arity >= 2 || g.b == 0), Errc::syntax,
            "malformed encoding: unused ref must be zero");
  }
  std::vector<std::uint32_t> outs(n_out);
  for (auto& o : outs) o = static_cast<std::uint32_t>(get_bits(bits, pos, 16));
  for (std::size_t k = pos; k < bits.size(); ++k)
    require(!bits.get(k), Errc::syntax, "malformed encoding: nonzero padding");
  try {
    return BooleanCircuit(n_in, std::move(gates), std::move(outs));
  } catch (const Error& e) {
    fail(Errc::syntax, std::string("malformed encoding: ") + e.what());
  }
}

CircuitBuilder::CircuitBuilder(std::size_t n_inputs)
    : n_inputs_(n_inputs), konst_(n_inputs, -1), neg_of_(n_inputs, kNone) {}

Wire CircuitBuilder::input(std::size_t i) const {
  require(i < n_inputs_, Errc::shape, "builder input out of range");
  return Wire{static_cast<std::uint32_t>(i)};
}

std::vector<Wire> CircuitBuilder::inputs(std::size_t begin, std::size_t count) const {
  std::vector<Wire> ws;
  ws.reserve(count);
  for (std::size_t i = 0; i < count; ++i) ws.push_back(input(begin + i));
  return ws;
}

Wire CircuitBuilder::push(GateOp op, std::uint32_t a, std::uint32_t b, int k) {
  gates_.push_back(Gate{op, a, b});
  konst_.push_back(static_cast<std::int8_t>(k));
  neg_of_.push_back(op == GateOp::Not ? a : kNone);
  return Wire{static_cast<std::uint32_t>(n_inputs_ + gates_.size() - 1)};
}

Wire CircuitBuilder::constant(bool v) {
  auto& slot = const_wire_[v ? 1 : 0];
  if (slot < 0) slot = push(v ? GateOp::Const1 : GateOp::Const0, 0, 0, v ? 1 : 0).id;
  return Wire{static_cast<std::uint32_t>(slot)};
}

Wire CircuitBuilder::and_(Wire a, Wire b) {
  const int ka = konst_[a.id], kb = konst_[b.id];
  if (ka == 0 || kb == 0) return constant(false);
  if (ka == 1) return b;
  if (kb == 1) return a;
  if (a.id == b.id) return a;
  if (neg_of_[a.id] == b.id || neg_of_[b.id] == a.id) return constant(false);
  return push(GateOp::And, a.id, b.id, -1);
}

Wire CircuitBuilder::xor_(Wire a, Wire b) {
  const int ka = konst_[a.id], kb = konst_[b.id];
  if (ka >= 0 && kb >= 0) return constant((ka ^ kb) != 0);
  if (ka == 0) return b;
  if (kb == 0) return a;
  if (ka == 1) return not_(b);
  if (kb == 1) return not_(a);
  if (a.id == b.id) return constant(false);
  return push(GateOp::Xor, a.id, b.id, -1);
}

Wire CircuitBuilder::not_(Wire a) {
  const int ka = konst_[a.id];
  if (ka >= 0) return constant(ka == 0);
  // neg_of_ links a wire and its complement in both directions.
  if (neg_of_[a.id] != kNone) return Wire{neg_of_[a.id]};
  const Wire n = push(GateOp::Not, a.id, 0, -1);
  neg_of_[a.id] = n.id;
  return n;
}

Wire CircuitBuilder::or_(Wire a, Wire b) { return not_(and_(not_(a), not_(b))); }

Wire CircuitBuilder::mux(Wire sel, Wire a, Wire b) {
  const int ks = konst_[sel.id];
  if (ks == 0) return a;
  if (ks == 1) return b;
  if (a.id == b.id) return a;
  // a ^ (sel & (a ^ b)): one AND.
  return xor_(a, and_(sel, xor_(a, b)));
}

Wire CircuitBuilder::and_all(std::span<const Wire> ws) {
  if (ws.empty()) return constant(true);
  Wire acc = ws[0];
  for (std::size_t i = 1; i < ws.size(); ++i) acc = and_(acc, ws[i]);
  return acc;
}

Wire CircuitBuilder::or_all(std::span<const Wire> ws) {
  if (ws.empty()) return constant(false);
  Wire acc = ws[0];
  for (std::size_t i = 1; i < ws.size(); ++i) acc = or_(acc, ws[i]);
  return acc;
}

Wire CircuitBuilder::equal(std::span<const Wire> a, std::span<const Wire> b) {
  require(a.size() == b.size(), Errc::shape, "equality over different widths");
  std::vector<Wire> eq;
  eq.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) eq.push_back(xnor(a[i], b[i]));
  return and_all(eq);
}

BooleanCircuit CircuitBuilder::build() const {
  return BooleanCircuit(n_inputs_, gates_, outputs_);
}

}  // namespace bsfe
