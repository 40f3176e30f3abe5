#pragma once

#include <cstdint>
#include <vector>

#include "retention/distributions.hpp"
#include "retention/types.hpp"

namespace retention {

// Everything that pins down one experiment run. Equal configs produce
// bit-identical results.
struct RunConfig {
  int m = 0;  // memory / batch size
  int T = 0;  // rounds
  int d = 1;  // dimension
  int b = 0;  // gradient-half size |R_t|; 0 means default m/2
  int k = 0;  // regression group size; 0 means default ceil(2 d ln(max(d,2)))
  EtaSchedule eta_schedule;
  std::uint64_t seed = 0;
  Engine engine = Engine::exact;
  DistributionSpec distribution = GaussianMeanSpec{};

  int effective_b() const;
  int effective_k() const;

  bool operator==(const RunConfig&) const = default;
};

// Checks common preconditions plus the mean-estimation ones (b < m, mean
// distribution, d matches). Throws std::invalid_argument.
void validate_mean_config(const RunConfig& cfg);

// Per-coordinate variant additionally needs m divisible by d and m/d >= 4.
void validate_improved_config(const RunConfig& cfg);

// Regression needs k >= d, m even, (m/2) divisible by d, and m/(2d) >= k.
void validate_regression_config(const RunConfig& cfg);

// Final estimate and per-run diagnostics of one experiment.
struct RunResult {
  std::vector<double> estimate;
  double squared_error = 0.0;
  // ||s_t - z_t||^2 realized in each update round (t = 2..T).
  std::vector<double> per_round_encoding_error;
  bool compliance_ok = true;
  // Engine fallbacks, reported so comparisons never use them silently.
  bool used_greedy = false;
  bool used_chunking = false;
  // Regression only: groups skipped as numerically singular.
  int singular_groups = 0;

  bool operator==(const RunResult&) const = default;
};

}  // namespace retention
