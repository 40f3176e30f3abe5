#pragma once

#include <optional>
#include <span>
#include <vector>

#include "retention/rng.hpp"

namespace retention {

// Norm used by the subset engines: full l2 distance, or the absolute gap in
// one coordinate.
struct SubsetNorm {
  std::optional<int> coordinate;  // nullopt = l2

  static SubsetNorm l2() { return {}; }
  static SubsetNorm per_coordinate(int i) { return {i}; }
};

// Result of a closest-average search. `indices` are 1-based positions into
// the candidate list, sorted ascending; `achieved` is the average of the
// chosen candidates; `distance` is to the target in the requested norm.
struct SubsetChoice {
  std::vector<int> indices;
  std::vector<double> achieved;
  double distance = 0.0;

  bool operator==(const SubsetChoice&) const = default;
};

// Global minimizer of dist(target, avg(S)) over all nonempty subsets S of the
// candidates. Ties break toward smaller cardinality, then the
// lexicographically smallest index list. The empty subset is excluded
// (avg of nothing is undefined). Throws std::invalid_argument on an empty
// candidate list or more than 24 candidates.
SubsetChoice best_subset_exact(std::span<const std::vector<double>> candidates,
                               const std::vector<double>& target,
                               SubsetNorm norm = SubsetNorm::l2());

// Scalar convenience wrapper.
SubsetChoice best_subset_exact(std::span<const double> candidates,
                               double target);

// Meet-in-the-middle search over scalar candidates. Same result contract and
// tie-break as best_subset_exact; the merge searches over (left-size,
// right-size) pairs because the objective is the distance of the subset
// average, not the sum. Accepts up to 40 candidates.
SubsetChoice best_subset_mitm(std::span<const double> candidates,
                              double target);

// Heuristic for candidate pools past the exact/mitm budgets: grow the subset
// by the single candidate that most reduces the distance, then make one pass
// of single-item swaps. Deterministic.
SubsetChoice best_subset_greedy(std::span<const std::vector<double>> candidates,
                                const std::vector<double>& target,
                                SubsetNorm norm = SubsetNorm::l2());

SubsetChoice best_subset_greedy(std::span<const double> candidates,
                                double target);

// Fraction of `trials` in which, for n fresh draws from U[-1,1] and a target
// z ~ U[-1/2, 1/2], some subset's SUM (empty allowed) lies strictly within
// epsilon of z. n <= 40.
double rss_success_probability(int n, double epsilon, int trials, Rng& rng);

// Multidimensional variant: n draws from N(0, I_d), z ~ U[-1/2, 1/2]^d,
// success when some nonempty subset's AVERAGE satisfies
// ||z - avg(S)||_inf <= 2*epsilon. Exact enumeration; d <= 3, n <= 20.
double rss_success_probability_multi(int n, int d, double epsilon, int trials,
                                     Rng& rng);

}  // namespace retention
