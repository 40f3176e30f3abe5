#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace retention {

// One stream element: a d-vector for mean estimation, or an (x, y) pair for
// regression (y stored in `label`). Items are tagged with the round in which
// they arrived so retention checks remain possible after any rewrapping.
struct DataItem {
  std::vector<double> values;
  std::optional<double> label;
  int arrival_round = 0;

  bool operator==(const DataItem&) const = default;
};

// Half-open index range [begin, end) into a SampleState's item list.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const IndexRange&) const = default;
};

// The entire inter-round state of a subsampling algorithm: an ordered list of
// retained items, optionally partitioned into per-coordinate segments.
struct SampleState {
  std::vector<DataItem> items;
  std::optional<std::vector<IndexRange>> segments;

  bool operator==(const SampleState&) const = default;
};

// Throws std::invalid_argument if segments overlap or run past the items.
void validate(const SampleState& state);

enum class EtaKind { inverse_t, inverse_lambda_t, constant };

// Learning-rate schedule. inverse_t is 1/t, inverse_lambda_t is 1/(lambda*t),
// constant is a fixed value c. `param` holds lambda or c as appropriate.
struct EtaSchedule {
  EtaKind kind = EtaKind::inverse_t;
  double param = 1.0;

  double at(int t) const;

  bool operator==(const EtaSchedule&) const = default;
};

enum class Engine { exact, mitm, greedy };

}  // namespace retention
