#pragma once

#include <functional>
#include <memory>

#include "bsfe/bits.hpp"
#include "bsfe/circuit.hpp"

namespace bsfe {

// A fixed-arity function on bit strings, evaluated natively. Ideal
// functionalities hold one of these instead of a circuit.
struct Program {
  std::size_t input_bits = 0;
  std::size_t output_bits = 0;
  std::function<BitVector(const BitVector&)> fn;

  BitVector operator()(const BitVector& x) const;
  static Program from_circuit(BooleanCircuit c);
};

}  // namespace bsfe
