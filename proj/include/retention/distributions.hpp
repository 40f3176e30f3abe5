#pragma once

#include <variant>
#include <vector>

#include "retention/rng.hpp"
#include "retention/types.hpp"

namespace retention {

// Mean-estimation stream: N(theta, Sigma). Sigma must be positive definite.
struct GaussianMeanSpec {
  std::vector<double> theta;
  std::vector<std::vector<double>> Sigma;

  bool operator==(const GaussianMeanSpec&) const = default;
};

// Mean-estimation stream with a guaranteed density floor around the mean:
// per coordinate, with probability p draw uniformly from
// [theta_j - gamma, theta_j + gamma], otherwise from N(theta_j, sigma^2).
// The marginal density on the window is at least p/(2*gamma) by construction.
struct ContaminatedUniformMeanSpec {
  std::vector<double> theta;
  double gamma = 1.0;
  double p = 1.0;
  double sigma = 1.0;

  bool operator==(const ContaminatedUniformMeanSpec&) const = default;
};

// Regression design x ~ U[0, B]^d.
struct UniformBoxDesign {
  double B = 1.0;

  bool operator==(const UniformBoxDesign&) const = default;
};

// Regression design: N(B/2 * 1, Sigma_x) clamped to [0, B]^d. Sigma_x must be
// small enough that the clamp probability stays below 1e-3.
struct GaussianClippedDesign {
  double B = 1.0;
  std::vector<std::vector<double>> Sigma_x;

  bool operator==(const GaussianClippedDesign&) const = default;
};

using DesignSpec = std::variant<UniformBoxDesign, GaussianClippedDesign>;

// Regression stream: x from the design, y = <theta, x> + N(0, sigma^2).
struct RegressionSpec {
  std::vector<double> theta;
  DesignSpec design;
  double sigma = 0.0;

  bool operator==(const RegressionSpec&) const = default;
};

using DistributionSpec =
    std::variant<GaussianMeanSpec, ContaminatedUniformMeanSpec, RegressionSpec>;

int dimension(const DistributionSpec& spec);
bool is_regression(const DistributionSpec& spec);
const std::vector<double>& true_theta(const DistributionSpec& spec);

// Throws std::invalid_argument on malformed specs (non-square or
// non-positive-definite covariance, p outside (0,1], ...).
void validate(const DistributionSpec& spec);

// Draws m i.i.d. items, each tagged with arrival_round = round.
std::vector<DataItem> draw_batch(const DistributionSpec& spec, int m, Rng& rng,
                                 int round);

// Convenience: standard spherical Gaussian mean spec.
DistributionSpec standard_gaussian_mean(int d);

}  // namespace retention
