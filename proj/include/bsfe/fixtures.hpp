#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bsfe/circuit.hpp"

namespace bsfe {

struct Fixture {
  std::string_view name;
  std::string_view text;
};

// Built-in copies of the circuits/ corpus, so the library and CLI work
// without the source tree.
const std::vector<Fixture>& fixtures();
BooleanCircuit fixture(std::string_view name);
std::vector<std::string> fixture_names();

}  // namespace bsfe
