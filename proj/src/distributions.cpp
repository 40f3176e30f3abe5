#include "retention/distributions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace retention {

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows,
                          const char* what) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw std::invalid_argument(std::string(what) + ": empty matrix");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw std::invalid_argument(std::string(what) + ": matrix not square");
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

// Cholesky factor of a covariance; rejects non-positive-definite input.
Eigen::MatrixXd cholesky_of(const std::vector<std::vector<double>>& cov,
                            const char* what) {
  const Eigen::MatrixXd m = to_matrix(cov, what);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument(std::string(what) +
                                ": covariance has a non-positive eigenvalue");
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(std::string(what) +
                                ": covariance is not positive definite");
  return llt.matrixL();
}

double normal_tail(double x) {  // P(N(0,1) > x)
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

}  // namespace

int dimension(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) { return static_cast<int>(s.theta.size()); }, spec);
}

bool is_regression(const DistributionSpec& spec) {
  return std::holds_alternative<RegressionSpec>(spec);
}

const std::vector<double>& true_theta(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> const std::vector<double>& { return s.theta; },
      spec);
}

void validate(const DistributionSpec& spec) {
  if (dimension(spec) == 0)
    throw std::invalid_argument("DistributionSpec: theta is empty");
  if (const auto* g = std::get_if<GaussianMeanSpec>(&spec)) {
    if (g->Sigma.size() != g->theta.size())
      throw std::invalid_argument("GaussianMean: Sigma/theta size mismatch");
    cholesky_of(g->Sigma, "GaussianMean");
  } else if (const auto* c = std::get_if<ContaminatedUniformMeanSpec>(&spec)) {
    if (c->gamma <= 0.0)
      throw std::invalid_argument("ContaminatedUniformMean: gamma <= 0");
    if (c->p <= 0.0 || c->p > 1.0)
      throw std::invalid_argument("ContaminatedUniformMean: p outside (0,1]");
    if (c->sigma <= 0.0)
      throw std::invalid_argument("ContaminatedUniformMean: sigma <= 0");
  } else if (const auto* r = std::get_if<RegressionSpec>(&spec)) {
    if (r->sigma < 0.0) throw std::invalid_argument("Regression: sigma < 0");
    if (const auto* ub = std::get_if<UniformBoxDesign>(&r->design)) {
      if (ub->B <= 0.0) throw std::invalid_argument("UniformBox: B <= 0");
    } else {
      const auto& gc = std::get<GaussianClippedDesign>(r->design);
      if (gc.B <= 0.0) throw std::invalid_argument("GaussianClipped: B <= 0");
      if (gc.Sigma_x.size() != r->theta.size())
        throw std::invalid_argument(
            "GaussianClipped: Sigma_x/theta size mismatch");
      cholesky_of(gc.Sigma_x, "GaussianClipped");
      // Keep the clamp a rare event so the design stays well-conditioned.
      const double d = static_cast<double>(r->theta.size());
      for (std::size_t j = 0; j < gc.Sigma_x.size(); ++j) {
        const double sd = std::sqrt(gc.Sigma_x[j][j]);
        if (2.0 * d * normal_tail((gc.B / 2.0) / sd) > 1e-3)
          throw std::invalid_argument(
              "GaussianClipped: clamp probability exceeds 1e-3");
      }
    }
  }
}

std::vector<DataItem> draw_batch(const DistributionSpec& spec, int m, Rng& rng,
                                 int round) {
  if (m < 1) throw std::invalid_argument("draw_batch: m < 1");
  validate(spec);
  const int d = dimension(spec);
  std::vector<DataItem> batch;
  batch.reserve(static_cast<std::size_t>(m));

  if (const auto* g = std::get_if<GaussianMeanSpec>(&spec)) {
    const Eigen::MatrixXd L = cholesky_of(g->Sigma, "GaussianMean");
    Eigen::VectorXd xi(d);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < d; ++j) xi(j) = rng.normal();
      const Eigen::VectorXd v = L * xi;
      DataItem item;
      item.values.resize(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        item.values[static_cast<std::size_t>(j)] =
            g->theta[static_cast<std::size_t>(j)] + v(j);
      item.arrival_round = round;
      batch.push_back(std::move(item));
    }
  } else if (const auto* c = std::get_if<ContaminatedUniformMeanSpec>(&spec)) {
    for (int i = 0; i < m; ++i) {
      DataItem item;
      item.values.resize(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        const double th = c->theta[static_cast<std::size_t>(j)];
        const double u = rng.uniform01();
        item.values[static_cast<std::size_t>(j)] =
            u < c->p ? th + rng.uniform(-c->gamma, c->gamma)
                     : th + c->sigma * rng.normal();
      }
      item.arrival_round = round;
      batch.push_back(std::move(item));
    }
  } else {
    const auto& r = std::get<RegressionSpec>(spec);
    Eigen::MatrixXd L;
    if (const auto* gc = std::get_if<GaussianClippedDesign>(&r.design))
      L = cholesky_of(gc->Sigma_x, "GaussianClipped");
    Eigen::VectorXd xi(d);
    for (int i = 0; i < m; ++i) {
      DataItem item;
      item.values.resize(static_cast<std::size_t>(d));
      if (const auto* ub = std::get_if<UniformBoxDesign>(&r.design)) {
        for (int j = 0; j < d; ++j)
          item.values[static_cast<std::size_t>(j)] = rng.uniform(0.0, ub->B);
      } else {
        const auto& gc = std::get<GaussianClippedDesign>(r.design);
        for (int j = 0; j < d; ++j) xi(j) = rng.normal();
        const Eigen::VectorXd v = L * xi;
        for (int j = 0; j < d; ++j)
          item.values[static_cast<std::size_t>(j)] =
              std::clamp(gc.B / 2.0 + v(j), 0.0, gc.B);
      }
      double y = 0.0;
      for (int j = 0; j < d; ++j)
        y += r.theta[static_cast<std::size_t>(j)] *
             item.values[static_cast<std::size_t>(j)];
      if (r.sigma > 0.0) y += r.sigma * rng.normal();
      item.label = y;
      item.arrival_round = round;
      batch.push_back(std::move(item));
    }
  }
  return batch;
}

DistributionSpec standard_gaussian_mean(int d) {
  GaussianMeanSpec g;
  g.theta.assign(static_cast<std::size_t>(d), 0.0);
  g.Sigma.assign(static_cast<std::size_t>(d),
                 std::vector<double>(static_cast<std::size_t>(d), 0.0));
  for (int j = 0; j < d; ++j)
    g.Sigma[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0;
  return g;
}

}  // namespace retention
