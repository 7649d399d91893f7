#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "crowdweight/dataset.hpp"

namespace crowdweight {

/// Annotator pool layout: `num_noisy` simulated annotators occupy columns
/// 0..num_noisy-1, followed by the perfect annotator (copies true labels)
/// and the adversarial one (negates them) when enabled.
struct SimulationSpec {
  double p = 1.0;     // noise parameter; high p = weak disagreement, low label noise
  int num_noisy = 10;
  bool include_perfect = true;
  bool include_adversarial = true;
  std::uint64_t seed = 0;

  int total_annotators() const {
    return num_noisy + (include_perfect ? 1 : 0) + (include_adversarial ? 1 : 0);
  }
  int perfect_column() const { return include_perfect ? num_noisy : -1; }
  int adversarial_column() const {
    return include_adversarial ? num_noisy + (include_perfect ? 1 : 0) : -1;
  }
  void validate() const;
};

/// Symmetric rescaling into [-1,+1]: divide by max |f_i|. The zero vector is
/// returned unchanged.
Eigen::VectorXd normalize_scores(const Eigen::VectorXd& scores);

/// Score-to-flip-probability transform
///   f~ = 2 (1 - 1 / (1 + exp(-2.5 p |f|))),
/// so f~(0) = 1 and f~ decreases toward 0 as |f| grows.
double flip_probability_score(double f, double p);

/// Generate multi-annotator labels. Per noisy annotator and example: copy
/// the true label, flip it with probability f~/2. Then, if a strict majority
/// of that example's noisy labels equals the true label, flip all of the
/// example's noisy labels with probability f~ (applied once; perfect and
/// adversarial columns take no part in the majority test or the mass flip).
/// Deterministic given the seed, independent of evaluation order: each
/// example draws from its own stream derived from (seed, example index).
MultiLabelDataset simulate_labels(const LabeledData& data,
                                  const Eigen::VectorXd& base_scores,
                                  const SimulationSpec& spec);

}  // namespace crowdweight
