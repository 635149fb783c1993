#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bsfe/bits.hpp"

namespace bsfe {

enum class GateOp : std::uint8_t { And = 0, Xor = 1, Not = 2, Const0 = 3, Const1 = 4 };

std::string_view gate_op_name(GateOp op);
unsigned gate_arity(GateOp op);

// Wires 0..n_inputs-1 are the circuit inputs; gate i drives wire n_inputs+i.
struct Gate {
  GateOp op = GateOp::Const0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  bool operator==(const Gate&) const = default;
};

class BooleanCircuit {
 public:
  BooleanCircuit() = default;
  BooleanCircuit(std::size_t n_inputs, std::vector<Gate> gates, std::vector<std::uint32_t> outputs);

  std::size_t n_inputs() const { return n_inputs_; }
  std::size_t n_outputs() const { return outputs_.size(); }
  std::size_t n_gates() const { return gates_.size(); }
  std::size_t n_wires() const { return n_inputs_ + gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }
  std::size_t and_count() const;

  BitVector eval(const BitVector& x) const;
  // 64 evaluations at once: bit k of inputs[i] is input i of evaluation k.
  std::vector<std::uint64_t> eval_sliced(std::span<const std::uint64_t> inputs) const;

  // Bit (x * n_outputs + j) is output j on input x (x read little-endian).
  BitVector truth_table() const;

  // Same gates over a wider input list; the extra inputs are ignored.
  BooleanCircuit with_input_count(std::size_t n) const;

  bool operator==(const BooleanCircuit&) const = default;

 private:
  std::size_t n_inputs_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::uint32_t> outputs_;
};

BitVector eval_circuit(const BooleanCircuit& c, const BitVector& x);

BooleanCircuit parse_circuit(std::string_view text);
std::string emit_circuit(const BooleanCircuit& c);
BooleanCircuit load_circuit_file(const std::string& path);

// Fixed-width encoding: 16-bit n_inputs, 16-bit gate count, 16-bit output
// count, per gate a 3-bit op and two 16-bit wire refs (unused refs are 0),
// per output a 16-bit wire ref, then zeros up to w.
std::size_t encoded_size(std::size_t n_gates, std::size_t n_outputs);
std::size_t encoded_size(const BooleanCircuit& c);
BitVector encode_circuit(const BooleanCircuit& c, std::size_t w);
BooleanCircuit decode_circuit(const BitVector& bits);

inline constexpr std::size_t kEncHeaderBits = 48;
inline constexpr std::size_t kEncGateBits = 35;
inline constexpr std::size_t kEncRefBits = 16;

struct Wire {
  std::uint32_t id = 0;
};

// Incremental construction with constant folding and NOT/double-NOT
// elimination. Builders for the larger program circuits use this.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t n_inputs);

  Wire input(std::size_t i) const;
  std::vector<Wire> inputs(std::size_t begin, std::size_t count) const;
  Wire constant(bool v);
  Wire and_(Wire a, Wire b);
  Wire xor_(Wire a, Wire b);
  Wire not_(Wire a);
  Wire or_(Wire a, Wire b);
  // sel ? b : a
  Wire mux(Wire sel, Wire a, Wire b);
  Wire xnor(Wire a, Wire b) { return not_(xor_(a, b)); }
  Wire and_all(std::span<const Wire> ws);
  Wire or_all(std::span<const Wire> ws);
  // 1 iff the bit vectors are equal.
  Wire equal(std::span<const Wire> a, std::span<const Wire> b);

  // Known constant value of a wire, or -1.
  int constant_value(Wire w) const { return konst_[w.id]; }

  void output(Wire w) { outputs_.push_back(w.id); }
  BooleanCircuit build() const;

 private:
  Wire push(GateOp op, std::uint32_t a, std::uint32_t b, int k);

  std::size_t n_inputs_;
  std::vector<Gate> gates_;
  std::vector<std::int8_t> konst_;
  std::vector<std::uint32_t> neg_of_;
  std::vector<std::uint32_t> outputs_;
  std::int64_t const_wire_[2] = {-1, -1};
};

}  // namespace bsfe
