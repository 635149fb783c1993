#include "bsfe/program.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

BitVector Program::operator()(const BitVector& x) const {
  require(x.size() == input_bits, Errc::shape,
          "program takes " + std::to_string(input_bits) + " bits, got " + std::to_string(x.size()));
  BitVector y = fn(x);
  require(y.size() == output_bits, Errc::internal, "program produced the wrong output length");
  return y;
}

Program Program::from_circuit(BooleanCircuit c) {
  const std::size_t in = c.n_inputs(), out = c.n_outputs();
  auto shared = std::make_shared<const BooleanCircuit>(std::move(c));
  return Program{in, out, [shared](const BitVector& x) { return shared->eval(x); }};
}

}  // namespace bsfe
