#include "retention/types.hpp"

#include <stdexcept>

namespace retention {

void validate(const SampleState& state) {
  if (!state.segments) return;
  std::size_t prev_end = 0;
  for (const auto& seg : *state.segments) {
    if (seg.begin > seg.end)
      throw std::invalid_argument("SampleState: segment begin > end");
    if (seg.begin < prev_end)
      throw std::invalid_argument("SampleState: segments overlap");
    if (seg.end > state.items.size())
      throw std::invalid_argument("SampleState: segment past item list");
    prev_end = seg.end;
  }
}

double EtaSchedule::at(int t) const {
  switch (kind) {
    case EtaKind::inverse_t:
      return 1.0 / static_cast<double>(t);
    case EtaKind::inverse_lambda_t:
      return 1.0 / (param * static_cast<double>(t));
    case EtaKind::constant:
      return param;
  }
  return 0.0;
}

}  // namespace retention
