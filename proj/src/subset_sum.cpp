#include "retention/subset_sum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace retention {

namespace {

constexpr int kExactBudget = 24;
constexpr int kMitmBudget = 40;

// Lexicographic order of the sorted index lists encoded by two bitmasks.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

// Deterministic tie-break: distance, then cardinality, then lex order.
bool choice_better(double dist_a, std::uint64_t mask_a, double dist_b,
                   std::uint64_t mask_b) {
  if (dist_a != dist_b) return dist_a < dist_b;
  const int ca = std::popcount(mask_a);
  const int cb = std::popcount(mask_b);
  if (ca != cb) return ca < cb;
  return lex_less(mask_a, mask_b);
}

std::vector<int> mask_to_indices(std::uint64_t mask) {
  std::vector<int> idx;
  while (mask != 0) {
    idx.push_back(std::countr_zero(mask) + 1);  // 1-based
    mask &= mask - 1;
  }
  return idx;
}

// Subset sum accumulated in ascending index order; the canonical association
// used when reporting any engine's result.
std::vector<double> canonical_sum(std::span<const std::vector<double>> cands,
                                  std::uint64_t mask) {
  const std::size_t d = cands[std::countr_zero(mask)].size();
  std::vector<double> s(d, 0.0);
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const auto& v = cands[std::countr_zero(m)];
    for (std::size_t j = 0; j < d; ++j) s[j] += v[j];
  }
  return s;
}

double norm_distance(const std::vector<double>& avg,
                     const std::vector<double>& target, SubsetNorm norm) {
  if (norm.coordinate) {
    const int i = *norm.coordinate;
    return std::abs(target[static_cast<std::size_t>(i)] -
                    avg[static_cast<std::size_t>(i)]);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double gap = target[j] - avg[j];
    s += gap * gap;
  }
  return std::sqrt(s);
}

SubsetChoice finalize(std::span<const std::vector<double>> cands,
                      std::uint64_t mask, const std::vector<double>& target,
                      SubsetNorm norm) {
  SubsetChoice out;
  out.indices = mask_to_indices(mask);
  std::vector<double> sum = canonical_sum(cands, mask);
  const double inv = 1.0 / static_cast<double>(std::popcount(mask));
  out.achieved.resize(sum.size());
  for (std::size_t j = 0; j < sum.size(); ++j) out.achieved[j] = sum[j] * inv;
  out.distance = norm_distance(out.achieved, target, norm);
  return out;
}

// Depth-first enumeration of all nonempty subsets. The running sums are kept
// on a per-depth stack so every partial sum is built by additions in
// ascending index order; no subtraction, no rounding drift between visits.
class ExactSearch {
public:
  ExactSearch(std::span<const std::vector<double>> cands,
              const std::vector<double>& target, SubsetNorm norm)
      : cands_(cands), target_(target), norm_(norm),
        n_(static_cast<int>(cands.size())),
        d_(static_cast<int>(cands[0].size())),
        sums_(static_cast<std::size_t>(n_) + 1,
              std::vector<double>(static_cast<std::size_t>(d_), 0.0)) {}

  std::uint64_t run() {
    recurse(0, 0, 0);
    return best_mask_;
  }

private:
  void recurse(int pos, int card, std::uint64_t mask) {
    if (pos == n_) {
      if (card > 0) evaluate(card, mask);
      return;
    }
    const auto& v = cands_[static_cast<std::size_t>(pos)];
    auto& next = sums_[static_cast<std::size_t>(card) + 1];
    const auto& cur = sums_[static_cast<std::size_t>(card)];
    for (int j = 0; j < d_; ++j)
      next[static_cast<std::size_t>(j)] =
          cur[static_cast<std::size_t>(j)] + v[static_cast<std::size_t>(j)];
    recurse(pos + 1, card + 1, mask | (std::uint64_t{1} << pos));
    recurse(pos + 1, card, mask);
  }

  void evaluate(int card, std::uint64_t mask) {
    const auto& sum = sums_[static_cast<std::size_t>(card)];
    const double inv = 1.0 / static_cast<double>(card);
    double metric;
    if (norm_.coordinate) {
      const auto i = static_cast<std::size_t>(*norm_.coordinate);
      metric = std::abs(target_[i] - sum[i] * inv);
    } else {
      double s = 0.0;
      for (int j = 0; j < d_; ++j) {
        const auto u = static_cast<std::size_t>(j);
        const double gap = target_[u] - sum[u] * inv;
        s += gap * gap;
      }
      metric = s;  // squared; monotone in the true distance
    }
    if (best_mask_ == 0 || choice_better(metric, mask, best_metric_, best_mask_))
      best_metric_ = metric, best_mask_ = mask;
  }

  std::span<const std::vector<double>> cands_;
  const std::vector<double>& target_;
  SubsetNorm norm_;
  int n_, d_;
  std::vector<std::vector<double>> sums_;
  double best_metric_ = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask_ = 0;
};

std::vector<std::vector<double>> wrap_scalars(std::span<const double> xs) {
  std::vector<std::vector<double>> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = {xs[i]};
  return out;
}

void check_candidates(std::size_t n, std::size_t budget, const char* op) {
  if (n == 0)
    throw std::invalid_argument(std::string(op) + ": empty candidate list");
  if (n > budget)
    throw std::invalid_argument(std::string(op) + ": candidate count " +
                                std::to_string(n) + " exceeds budget " +
                                std::to_string(budget));
}

// All 2^n subset sums of xs, sums[mask] built by peeling the lowest set bit.
std::vector<double> all_subset_sums(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  for (std::uint64_t mask = 1; mask < sums.size(); ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + xs[static_cast<std::size_t>(low)];
  }
  return sums;
}

}  // namespace

SubsetChoice best_subset_exact(std::span<const std::vector<double>> candidates,
                               const std::vector<double>& target,
                               SubsetNorm norm) {
  check_candidates(candidates.size(), kExactBudget, "best_subset_exact");
  for (const auto& c : candidates)
    if (c.size() != target.size())
      throw std::invalid_argument(
          "best_subset_exact: candidate/target dimension mismatch");
  ExactSearch search(candidates, target, norm);
  return finalize(candidates, search.run(), target, norm);
}

SubsetChoice best_subset_exact(std::span<const double> candidates,
                               double target) {
  const auto wrapped = wrap_scalars(candidates);
  return best_subset_exact(wrapped, std::vector<double>{target});
}

SubsetChoice best_subset_mitm(std::span<const double> candidates,
                              double target) {
  check_candidates(candidates.size(), kMitmBudget, "best_subset_mitm");
  const int n = static_cast<int>(candidates.size());
  const int na = n / 2;
  const int nb = n - na;

  struct Entry {
    double sum;
    std::uint32_t mask;
  };
  // Right-half subsets bucketed by cardinality, sorted by sum (then by lex
  // order of the index list so equal-sum runs surface the tie-break winner
  // first).
  std::vector<std::vector<Entry>> right(static_cast<std::size_t>(nb) + 1);
  const auto xs_b = candidates.subspan(static_cast<std::size_t>(na));
  const std::vector<double> sums_b = all_subset_sums(xs_b);
  for (std::uint32_t mask = 0; mask < sums_b.size(); ++mask)
    right[static_cast<std::size_t>(std::popcount(mask))].push_back(
        {sums_b[mask], mask});
  for (auto& bucket : right)
    std::sort(bucket.begin(), bucket.end(), [](const Entry& a, const Entry& b) {
      if (a.sum != b.sum) return a.sum < b.sum;
      return lex_less(a.mask, b.mask);
    });

  const std::vector<double> sums_a =
      all_subset_sums(candidates.subspan(0, static_cast<std::size_t>(na)));

  double best_dist = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;

  auto consider = [&](double sum_a, std::uint32_t mask_a, const Entry& e,
                      int card) {
    const double avg = (sum_a + e.sum) / static_cast<double>(card);
    const double dist = std::abs(target - avg);
    const std::uint64_t mask =
        static_cast<std::uint64_t>(mask_a) |
        (static_cast<std::uint64_t>(e.mask) << na);
    if (best_mask == 0 || choice_better(dist, mask, best_dist, best_mask))
      best_dist = dist, best_mask = mask;
  };

  for (std::uint32_t mask_a = 0; mask_a < sums_a.size(); ++mask_a) {
    const double sum_a = sums_a[mask_a];
    const int ca = std::popcount(mask_a);
    for (int cb = 0; cb <= nb; ++cb) {
      const int card = ca + cb;
      if (card == 0) continue;
      const auto& bucket = right[static_cast<std::size_t>(cb)];
      const double want = target * static_cast<double>(card) - sum_a;
      auto it = std::lower_bound(
          bucket.begin(), bucket.end(), want,
          [](const Entry& e, double v) { return e.sum < v; });
      // Probe the nearest sums on both sides of the insertion point,
      // including any run of exactly equal sums.
      if (it != bucket.end()) {
        for (auto p = it; p != bucket.end() && p->sum == it->sum; ++p)
          consider(sum_a, mask_a, *p, card);
      }
      if (it != bucket.begin()) {
        auto q = std::prev(it);
        for (auto p = q;; --p) {
          if (p->sum == q->sum) consider(sum_a, mask_a, *p, card);
          if (p == bucket.begin() || p->sum != q->sum) break;
        }
      }
    }
  }

  const auto wrapped = wrap_scalars(candidates);
  return finalize(wrapped, best_mask, std::vector<double>{target},
                  SubsetNorm::l2());
}

SubsetChoice best_subset_greedy(std::span<const std::vector<double>> candidates,
                                const std::vector<double>& target,
                                SubsetNorm norm) {
  if (candidates.empty())
    throw std::invalid_argument("best_subset_greedy: empty candidate list");
  const int n = static_cast<int>(candidates.size());
  const std::size_t d = target.size();

  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::vector<double> sum(d, 0.0);
  int card = 0;
  double cur_dist = std::numeric_limits<double>::infinity();

  auto dist_with = [&](const std::vector<double>& s, int c) {
    std::vector<double> avg(d);
    for (std::size_t j = 0; j < d; ++j) avg[j] = s[j] / static_cast<double>(c);
    return norm_distance(avg, target, norm);
  };

  // Growth phase: keep adding while the distance strictly improves.
  for (;;) {
    int best_j = -1;
    double best_d = cur_dist;
    for (int j = 0; j < n; ++j) {
      if (chosen[static_cast<std::size_t>(j)]) continue;
      std::vector<double> s = sum;
      for (std::size_t u = 0; u < d; ++u)
        s[u] += candidates[static_cast<std::size_t>(j)][u];
      const double dj = dist_with(s, card + 1);
      if (dj < best_d) {
        best_d = dj;
        best_j = j;
      }
    }
    if (best_j < 0) break;
    chosen[static_cast<std::size_t>(best_j)] = true;
    for (std::size_t u = 0; u < d; ++u)
      sum[u] += candidates[static_cast<std::size_t>(best_j)][u];
    ++card;
    cur_dist = best_d;
  }

  // One pass of single-item swaps.
  for (int a = 0; a < n; ++a) {
    if (!chosen[static_cast<std::size_t>(a)]) continue;
    int best_b = -1;
    double best_d = cur_dist;
    for (int b = 0; b < n; ++b) {
      if (chosen[static_cast<std::size_t>(b)]) continue;
      std::vector<double> s = sum;
      for (std::size_t u = 0; u < d; ++u)
        s[u] += candidates[static_cast<std::size_t>(b)][u] -
                candidates[static_cast<std::size_t>(a)][u];
      const double db = dist_with(s, card);
      if (db < best_d) {
        best_d = db;
        best_b = b;
      }
    }
    if (best_b >= 0) {
      chosen[static_cast<std::size_t>(a)] = false;
      chosen[static_cast<std::size_t>(best_b)] = true;
      for (std::size_t u = 0; u < d; ++u)
        sum[u] += candidates[static_cast<std::size_t>(best_b)][u] -
                  candidates[static_cast<std::size_t>(a)][u];
      cur_dist = best_d;
    }
  }

  std::uint64_t mask = 0;
  for (int j = 0; j < n; ++j)
    if (chosen[static_cast<std::size_t>(j)]) mask |= std::uint64_t{1} << j;
  return finalize(candidates, mask, target, norm);
}

SubsetChoice best_subset_greedy(std::span<const double> candidates,
                                double target) {
  const auto wrapped = wrap_scalars(candidates);
  return best_subset_greedy(wrapped, std::vector<double>{target});
}

double rss_success_probability(int n, double epsilon, int trials, Rng& rng) {
  if (n < 1 || n > kMitmBudget)
    throw std::invalid_argument("rss_success_probability: n out of range");
  if (epsilon <= 0.0 || trials < 1)
    throw std::invalid_argument("rss_success_probability: bad epsilon/trials");

  const int na = n / 2;
  int successes = 0;
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int trial = 0; trial < trials; ++trial) {
    for (auto& x : xs) x = rng.uniform(-1.0, 1.0);
    const double z = rng.uniform(-0.5, 0.5);

    std::vector<double> sums_a =
        all_subset_sums(std::span<const double>(xs.data(),
                                                static_cast<std::size_t>(na)));
    std::sort(sums_a.begin(), sums_a.end());
    const std::vector<double> sums_b = all_subset_sums(std::span<const double>(
        xs.data() + na, static_cast<std::size_t>(n - na)));

    bool ok = false;
    for (const double sb : sums_b) {
      const double want = z - sb;
      auto it = std::lower_bound(sums_a.begin(), sums_a.end(), want);
      if (it != sums_a.end() && std::abs(*it + sb - z) < epsilon) ok = true;
      if (it != sums_a.begin() &&
          std::abs(*std::prev(it) + sb - z) < epsilon)
        ok = true;
      if (ok) break;
    }
    if (ok) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

double rss_success_probability_multi(int n, int d, double epsilon, int trials,
                                     Rng& rng) {
  if (n < 1 || n > 20 || d < 1 || d > 3)
    throw std::invalid_argument(
        "rss_success_probability_multi: n <= 20 and d <= 3 required");
  if (epsilon <= 0.0 || trials < 1)
    throw std::invalid_argument(
        "rss_success_probability_multi: bad epsilon/trials");

  int successes = 0;
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(d));
  for (int trial = 0; trial < trials; ++trial) {
    for (auto& x : xs) {
      x.resize(static_cast<std::size_t>(d));
      for (auto& v : x) v = rng.normal();
    }
    for (auto& v : z) v = rng.uniform(-0.5, 0.5);

    bool ok = false;
    std::vector<double> sum(static_cast<std::size_t>(d));
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n) && !ok;
         ++mask) {
      const int low = std::countr_zero(mask);
      const std::uint32_t rest = mask & (mask - 1);
      for (std::size_t j = 0; j < z.size(); ++j)
        sum[j] = xs[static_cast<std::size_t>(low)][j];
      for (std::uint32_t m = rest; m != 0; m &= m - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(m));
        for (std::size_t j = 0; j < z.size(); ++j) sum[j] += xs[i][j];
      }
      const double inv = 1.0 / static_cast<double>(std::popcount(mask));
      double worst = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        worst = std::max(worst, std::abs(z[j] - sum[j] * inv));
      ok = worst <= 2.0 * epsilon;
    }
    if (ok) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace retention
