#include "crowdweight/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "crowdweight/errors.hpp"

namespace crowdweight {

namespace {

// Midranks (1-based) of v; tied values share the average of their positions.
std::vector<double> midranks(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * (i + j) + 1.0;
    for (int k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

double au_roc(const ScoredPredictions& p) {
  const int m = static_cast<int>(p.scores.size());
  if (p.truth.size() != m) throw std::invalid_argument("au_roc: size mismatch");
  long long pos = 0, neg = 0;
  for (int i = 0; i < m; ++i) (p.truth(i) > 0 ? pos : neg) += 1;
  if (pos == 0 || neg == 0)
    throw InsufficientDataError("au_roc: both classes must be present");

  const std::vector<double> scores(p.scores.data(), p.scores.data() + m);
  const std::vector<double> ranks = midranks(scores);
  double rank_sum_pos = 0.0;
  for (int i = 0; i < m; ++i)
    if (p.truth(i) > 0) rank_sum_pos += ranks[i];
  const double u = rank_sum_pos - 0.5 * static_cast<double>(pos) * (pos + 1);
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

double au_prc(const ScoredPredictions& p) {
  const int m = static_cast<int>(p.scores.size());
  if (p.truth.size() != m) throw std::invalid_argument("au_prc: size mismatch");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return p.scores(a) > p.scores(b); });

  long long total_pos = 0;
  for (int i = 0; i < m; ++i) total_pos += p.truth(i) > 0 ? 1 : 0;
  if (total_pos == 0) throw InsufficientDataError("au_prc: no positive examples");

  double area = 0.0;
  long long tp = 0, fp = 0;
  int i = 0;
  while (i < m) {
    int j = i;  // block of tied scores enters together
    while (j + 1 < m && p.scores(order[j + 1]) == p.scores(order[i])) ++j;
    long long block_tp = 0, block_fp = 0;
    for (int k = i; k <= j; ++k) (p.truth(order[k]) > 0 ? block_tp : block_fp) += 1;
    tp += block_tp;
    fp += block_fp;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    area += precision * static_cast<double>(block_tp) / static_cast<double>(total_pos);
    i = j + 1;
  }
  return area;
}

WilcoxonResult wilcoxon_signed_rank(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: size mismatch");
  std::vector<double> abs_diff;
  std::vector<int> sign;
  for (int i = 0; i < a.size(); ++i) {
    const double d = a(i) - b(i);
    if (d == 0.0) continue;
    abs_diff.push_back(std::abs(d));
    sign.push_back(d > 0 ? 1 : -1);
  }
  const int n = static_cast<int>(abs_diff.size());
  if (n < 5)
    throw InsufficientDataError("wilcoxon: fewer than 5 nonzero differences");

  const std::vector<double> ranks = midranks(abs_diff);
  double w_plus = 0.0;
  for (int i = 0; i < n; ++i)
    if (sign[i] > 0) w_plus += ranks[i];

  const double mean = n * (n + 1) / 4.0;
  double variance = n * (n + 1) * (2.0 * n + 1) / 24.0;
  {
    // Tie correction: subtract sum(t^3 - t)/48 over tie groups.
    std::vector<double> sorted(abs_diff);
    std::sort(sorted.begin(), sorted.end());
    int i = 0;
    while (i < n) {
      int j = i;
      while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
      const double t = j - i + 1;
      variance -= (t * t * t - t) / 48.0;
      i = j + 1;
    }
  }
  const double sd = std::sqrt(variance);
  double z = 0.0;
  if (sd > 0.0 && w_plus != mean) {
    const double shift = w_plus > mean ? -0.5 : 0.5;  // continuity correction
    z = (w_plus - mean + shift) / sd;
  }
  double p = 2.0 * (1.0 - normal_cdf(std::abs(z)));
  p = std::min(1.0, std::max(p, std::numeric_limits<double>::min()));
  return {w_plus, p, n};
}

int win_count(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("win_count: size mismatch");
  int wins = 0;
  for (int i = 0; i < a.size(); ++i) wins += a(i) > b(i) ? 1 : 0;
  return wins;
}

}  // namespace crowdweight
