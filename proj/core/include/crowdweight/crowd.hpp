#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "crowdweight/dataset.hpp"

namespace crowdweight {

enum class FitMode { baseline, interactive };

struct InteractiveConfig {
  double alpha = 1.0;    // disagreement reweighting strength; only read in interactive mode
  double lambda = 1e-3;  // ridge parameter, unnormalized convention (see wls.hpp)
  int max_iters = 100;
  double tol = 1e-6;     // relative ||w_new - w_old|| / max(||w_new||, 1e-12)
  FitMode mode = FitMode::interactive;

  void validate() const;
};

/// Alternating-update estimate of the classifier and the annotator pool.
struct CrowdModel {
  Eigen::VectorXd w;                // n
  Eigen::VectorXd z;                // L, positive expertise scores
  Eigen::VectorXd y_hat;            // m, real-valued consensus labels
  Eigen::VectorXd d;                // m, per-example disagreement
  Eigen::VectorXd example_weights;  // m, g(d) in (0,1]
  std::vector<double> trace;        // per-iteration objective after the w update
  int iterations = 0;
  bool converged = false;
  double alpha = 0.0;
  double lambda = 0.0;

  Eigen::VectorXd scores(const Eigen::MatrixXd& features) const { return features * w; }
};

/// Pairwise disagreement of one example's labels: sum over unordered pairs of
/// (y^(l) - y^(l'))^2, which is 4 k (L - k) for k positive labels.
double disagreement(const Eigen::Ref<const Eigen::VectorXi>& labels);

/// Row-wise disagreement for an m x L label matrix.
Eigen::VectorXd disagreements(const Eigen::MatrixXi& labels);

/// g(d) = 1 / (1 + exp(alpha d)); monotone decreasing, g(0) = 1/2. Floored at
/// 1e-300 so a weight is never exactly zero.
double reweight(double d, double alpha);

/// Expertise-weighted mean label per example; |result| <= 1.
Eigen::VectorXd consensus_labels(const Eigen::MatrixXi& annotator_labels,
                                 const Eigen::VectorXd& z);

/// 1/z_l = mean_i weights_i * residual(i,l)^2, with unit weights when absent.
/// The mean is floored at 1e-12, capping z at 1e12.
Eigen::VectorXd update_expertise(const Eigen::MatrixXd& residuals,
                                 const std::optional<Eigen::VectorXd>& weights = std::nullopt);

/// Alternating estimation. Consensus labels start from an unweighted majority
/// vote (ties to +1); each iteration solves the weighted ridge problem for w,
/// re-estimates expertise from weighted residuals, and recomputes consensus.
/// Baseline mode uses unit example weights throughout; interactive mode uses
/// fixed weights g(d_i).
CrowdModel fit(const MultiLabelDataset& ds, const InteractiveConfig& cfg);

/// {"w":[...],"z":[...],"alpha":..,"lambda":..,"iterations":..,"objective_trace":[...]}
std::string to_json(const CrowdModel& model);

}  // namespace crowdweight
