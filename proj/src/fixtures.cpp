#include "bsfe/fixtures.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> kFixtures = {
      {"and2", R"(in 2
g0 = AND in0 in1
out g0
)"},
      {"xor2", R"(in 2
g0 = XOR in0 in1
out g0
)"},
      {"or2", R"(# two-input OR via De Morgan
in 2
g0 = NOT in0
g1 = NOT in1
g2 = AND g0 g1
g3 = NOT g2
out g3
)"},
      {"not1", R"(in 1
g0 = NOT in0
out g0
)"},
      {"pass1", R"(# wire pass-through, no gates
in 1
out in0
)"},
      {"const1", R"(in 2
g0 = CONST1
out g0
)"},
      {"maj3", R"(# majority: ab ^ c(a^b)
in 3
g0 = AND in0 in1
g1 = XOR in0 in1
g2 = AND in2 g1
g3 = XOR g0 g2
out g3
)"},
      {"mux3", R"(# in0 selects: 0 -> in1, 1 -> in2
in 3
g0 = XOR in1 in2
g1 = AND in0 g0
g2 = XOR in1 g1
out g2
)"},
      {"parity4", R"(in 4
g0 = XOR in0 in1
g1 = XOR g0 in2
g2 = XOR g1 in3
out g2
)"},
      {"eq2", R"(# 1 iff (in0,in1) == (in2,in3)
in 4
g0 = XOR in0 in2
g1 = NOT g0
g2 = XOR in1 in3
g3 = NOT g2
g4 = AND g1 g3
out g4
)"},
      {"adder2", R"(# 2-bit ripple adder: a = in0 + 2*in1, b = in2 + 2*in3
# outputs sum bits low to high, then carry
in 4
g0 = XOR in0 in2
g1 = AND in0 in2
g2 = XOR in1 in3
g3 = XOR g2 g1
g4 = AND in1 in3
g5 = AND g1 g2
g6 = XOR g4 g5
out g0 g3 g6
)"},
      {"adder4", R"(# 4-bit ripple adder: a = in0..in3, b = in4..in7 (little-endian)
in 8
g0 = XOR in0 in4
g1 = AND in0 in4
g2 = XOR in1 in5
g3 = XOR g2 g1
g4 = AND in1 in5
g5 = AND g2 g1
g6 = XOR g4 g5
g7 = XOR in2 in6
g8 = XOR g7 g6
g9 = AND in2 in6
g10 = AND g7 g6
g11 = XOR g9 g10
g12 = XOR in3 in7
g13 = XOR g12 g11
g14 = AND in3 in7
g15 = AND g12 g11
g16 = XOR g14 g15
out g0 g3 g8 g13 g16
)"},
  };
  return kFixtures;
}

BooleanCircuit fixture(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return parse_circuit(f.text);
  fail(Errc::usage, "unknown fixture circuit '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& f : fixtures()) names.emplace_back(f.name);
  return names;
}

}  // namespace bsfe
