#pragma once

#include <Eigen/Dense>

namespace crowdweight {

struct ScoredPredictions {
  Eigen::VectorXd scores;
  Eigen::VectorXi truth;  // entries in {-1,+1}
};

/// Mann-Whitney AU-ROC with midrank tie handling: probability that a random
/// positive outscores a random negative, ties counted half. Throws
/// InsufficientDataError when only one class is present.
double au_roc(const ScoredPredictions& p);

/// Area under the precision-recall steps, descending-score sweep, tied
/// scores processed as one block, no linear interpolation. Throws
/// InsufficientDataError when no positives are present.
double au_prc(const ScoredPredictions& p);

struct WilcoxonResult {
  double statistic;    // signed-rank sum of positive differences (W+)
  double p_value;      // two-sided, normal approximation
  int nonzero_count;   // differences kept after dropping zeros
};

/// Wilcoxon signed-rank test on paired samples: drop zero differences,
/// midranks for ties, tie-corrected variance, continuity correction.
/// Requires at least 5 nonzero differences.
WilcoxonResult wilcoxon_signed_rank(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// #{i : a_i > b_i}, strict.
int win_count(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace crowdweight
