#include "crowdweight/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "crowdweight/rng.hpp"

namespace crowdweight {

void SimulationSpec::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("simulate: p must be positive");
  if (num_noisy < 0) throw std::invalid_argument("simulate: num_noisy must be >= 0");
  if (total_annotators() < 1) throw std::invalid_argument("simulate: at least one annotator");
}

Eigen::VectorXd normalize_scores(const Eigen::VectorXd& scores) {
  if (scores.size() == 0) throw std::invalid_argument("normalize_scores: empty input");
  const double peak = scores.cwiseAbs().maxCoeff();
  if (peak == 0.0) return scores;
  return scores / peak;
}

double flip_probability_score(double f, double p) {
  return 2.0 * (1.0 - 1.0 / (1.0 + std::exp(-2.5 * p * std::abs(f))));
}

MultiLabelDataset simulate_labels(const LabeledData& data,
                                  const Eigen::VectorXd& base_scores,
                                  const SimulationSpec& spec) {
  spec.validate();
  const int m = static_cast<int>(data.features.rows());
  if (m < 1) throw std::invalid_argument("simulate: empty dataset");
  if (data.labels.size() != m)
    throw std::invalid_argument("simulate: true labels required for every example");
  if (base_scores.size() != m)
    throw std::invalid_argument("simulate: one base score per example required");

  const int L = spec.total_annotators();
  MultiLabelDataset out;
  out.features = data.features;
  out.annotator_labels.resize(m, L);
  out.true_labels = data.labels;

  for (int i = 0; i < m; ++i) {
    const int truth = data.labels(i);
    const double flip = flip_probability_score(base_scores(i), spec.p);
    auto eng = make_engine(spec.seed, 0x51e7u, static_cast<std::uint64_t>(i));

    int agree = 0;
    for (int l = 0; l < spec.num_noisy; ++l) {
      const int label = bernoulli(eng, flip / 2.0) ? -truth : truth;
      out.annotator_labels(i, l) = label;
      if (label == truth) ++agree;
    }
    // Mass flip only when the strict majority of the noisy pool got it right,
    // so boundary examples end up with mostly-wrong labels.
    if (2 * agree > spec.num_noisy && bernoulli(eng, flip)) {
      for (int l = 0; l < spec.num_noisy; ++l)
        out.annotator_labels(i, l) = -out.annotator_labels(i, l);
    }
    if (spec.include_perfect) out.annotator_labels(i, spec.perfect_column()) = truth;
    if (spec.include_adversarial) out.annotator_labels(i, spec.adversarial_column()) = -truth;
  }
  return out;
}

}  // namespace crowdweight
