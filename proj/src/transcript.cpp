#include "bsfe/transcript.hpp"

namespace bsfe {

void Transcript::emit(std::string_view ev, nlohmann::json fields) {
  fields["v"] = kTranscriptVersion;
  fields["t"] = tick_;
  fields["ev"] = std::string(ev);
  text_ += fields.dump();
  text_ += '\n';
  ++events_;
}

void Transcript::clear() {
  tick_ = 0;
  events_ = 0;
  text_.clear();
}

}  // namespace bsfe
