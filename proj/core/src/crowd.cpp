#include "crowdweight/crowd.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "crowdweight/wls.hpp"

namespace crowdweight {

void InteractiveConfig::validate() const {
  if (alpha < 0.0) throw std::invalid_argument("fit: alpha must be nonnegative");
  if (lambda < 0.0) throw std::invalid_argument("fit: lambda must be nonnegative");
  if (max_iters < 1) throw std::invalid_argument("fit: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("fit: tol must be positive");
}

double disagreement(const Eigen::Ref<const Eigen::VectorXi>& labels) {
  const int L = static_cast<int>(labels.size());
  if (L < 1) throw std::invalid_argument("disagreement: at least one label");
  int positives = 0;
  for (int l = 0; l < L; ++l) positives += labels(l) > 0 ? 1 : 0;
  return 4.0 * positives * (L - positives);
}

Eigen::VectorXd disagreements(const Eigen::MatrixXi& labels) {
  Eigen::VectorXd d(labels.rows());
  for (int i = 0; i < labels.rows(); ++i) d(i) = disagreement(labels.row(i).transpose());
  return d;
}

double reweight(double d, double alpha) {
  if (d < 0.0) throw std::invalid_argument("reweight: negative disagreement");
  if (alpha < 0.0) throw std::invalid_argument("reweight: negative alpha");
  constexpr double kFloor = 1e-300;
  const double t = alpha * d;
  if (t > 700.0) return kFloor;  // exp would overflow
  const double g = 1.0 / (1.0 + std::exp(t));
  return g < kFloor ? kFloor : g;
}

Eigen::VectorXd consensus_labels(const Eigen::MatrixXi& annotator_labels,
                                 const Eigen::VectorXd& z) {
  if (annotator_labels.cols() != z.size())
    throw std::invalid_argument("consensus: one expertise score per annotator");
  const double total = z.sum();
  if (!(total > 0.0)) throw std::invalid_argument("consensus: expertise must sum to > 0");
  return (annotator_labels.cast<double>() * z) / total;
}

Eigen::VectorXd update_expertise(const Eigen::MatrixXd& residuals,
                                 const std::optional<Eigen::VectorXd>& weights) {
  const int m = static_cast<int>(residuals.rows());
  const int L = static_cast<int>(residuals.cols());
  if (m < 1 || L < 1) throw std::invalid_argument("update_expertise: empty residuals");
  if (weights && weights->size() != m)
    throw std::invalid_argument("update_expertise: one weight per example");

  constexpr double kMeanFloor = 1e-12;
  Eigen::VectorXd z(L);
  for (int l = 0; l < L; ++l) {
    double mean;
    if (weights)
      mean = weights->cwiseProduct(residuals.col(l).cwiseAbs2()).sum() / m;
    else
      mean = residuals.col(l).squaredNorm() / m;
    z(l) = 1.0 / std::max(mean, kMeanFloor);
  }
  return z;
}

namespace {

Eigen::VectorXd majority_vote(const Eigen::MatrixXi& labels) {
  Eigen::VectorXd y(labels.rows());
  for (int i = 0; i < labels.rows(); ++i) {
    const int s = labels.row(i).sum();
    y(i) = s >= 0 ? 1.0 : -1.0;  // tie -> +1
  }
  return y;
}

// Objective recorded in the trace: (1/m) * (sum_i g_i (<w,x_i> - y_i)^2 +
// lambda ||w||^2), i.e. the solver's objective rescaled by 1/m. The w update
// minimizes exactly this, so it is non-increasing across that step.
double objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 const Eigen::VectorXd& weights, double lambda, const Eigen::VectorXd& w) {
  const Eigen::VectorXd r = X * w - y;
  return (weights.cwiseProduct(r.cwiseAbs2()).sum() + lambda * w.squaredNorm()) / X.rows();
}

}  // namespace

CrowdModel fit(const MultiLabelDataset& ds, const InteractiveConfig& cfg) {
  ds.validate();
  cfg.validate();
  const int m = ds.num_examples();
  const int n = ds.num_features();
  const bool interactive = cfg.mode == FitMode::interactive;

  CrowdModel model;
  model.alpha = interactive ? cfg.alpha : 0.0;
  model.lambda = cfg.lambda;
  model.d = disagreements(ds.annotator_labels);
  model.example_weights.resize(m);
  for (int i = 0; i < m; ++i)
    model.example_weights(i) = interactive ? reweight(model.d(i), cfg.alpha) : 1.0;

  model.y_hat = majority_vote(ds.annotator_labels);
  model.w = Eigen::VectorXd::Zero(n);

  WlsProblem problem;
  problem.X = ds.features;
  problem.weights = model.example_weights;
  problem.lambda = cfg.lambda;

  const Eigen::MatrixXd label_matrix = ds.annotator_labels.cast<double>();
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    problem.y = model.y_hat;
    const double before = objective(problem.X, problem.y, problem.weights, cfg.lambda, model.w);
    const Eigen::VectorXd w_new = solve(problem);
    const double after = objective(problem.X, problem.y, problem.weights, cfg.lambda, w_new);
    if (after > before + 1e-9 * std::max(1.0, before))
      throw std::logic_error("fit: objective increased across the w update");
    model.trace.push_back(after);

    const double delta = (w_new - model.w).norm() / std::max(w_new.norm(), 1e-12);
    model.w = w_new;
    model.iterations = iter + 1;

    const Eigen::VectorXd predictions = ds.features * model.w;
    const Eigen::MatrixXd residuals = label_matrix.colwise() - predictions;
    model.z = interactive
                  ? update_expertise(residuals, model.example_weights)
                  : update_expertise(residuals);
    model.y_hat = consensus_labels(ds.annotator_labels, model.z);

    if (delta < cfg.tol) {
      model.converged = true;
      break;
    }
  }
  return model;
}

std::string to_json(const CrowdModel& model) {
  nlohmann::json j;
  j["w"] = std::vector<double>(model.w.data(), model.w.data() + model.w.size());
  j["z"] = std::vector<double>(model.z.data(), model.z.data() + model.z.size());
  j["alpha"] = model.alpha;
  j["lambda"] = model.lambda;
  j["iterations"] = model.iterations;
  j["objective_trace"] = model.trace;
  return j.dump();
}

}  // namespace crowdweight
