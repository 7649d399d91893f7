#include "crowdweight/wls.hpp"

#include <stdexcept>

#include "crowdweight/errors.hpp"

namespace crowdweight {

void WlsProblem::validate() const {
  if (X.rows() != y.size() || X.rows() != weights.size())
    throw std::invalid_argument("wls: X, y and weights must agree on the number of rows");
  if (X.rows() < 1 || X.cols() < 1) throw std::invalid_argument("wls: empty problem");
  if ((weights.array() < 0.0).any()) throw std::invalid_argument("wls: negative weight");
  if (lambda < 0.0) throw std::invalid_argument("wls: negative lambda");
}

namespace {

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs,
                           double lambda, WlsDiagnostics* diag) {
  WlsDiagnostics local;
  local.lambda_zero = lambda == 0.0;

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  Eigen::VectorXd w;
  if (llt.info() == Eigen::Success) {
    w = llt.solve(rhs);
    local.rcond = llt.rcond();
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible())
      throw SingularMatrixError("wls: singular normal equations and lambda = 0");
    w = lu.solve(rhs);
    local.rcond = lu.rcond();
    local.used_fallback = true;
  }
  local.condition_warning = local.rcond < 1e-12;
  if (diag) *diag = local;
  return w;
}

}  // namespace

Eigen::VectorXd solve(const WlsProblem& p, WlsDiagnostics* diag) {
  p.validate();
  const Eigen::MatrixXd dx = p.weights.asDiagonal() * p.X;
  Eigen::MatrixXd gram = p.X.transpose() * dx;
  gram.diagonal().array() += p.lambda;
  const Eigen::VectorXd rhs = p.X.transpose() * p.weights.cwiseProduct(p.y);
  return solve_gram(gram, rhs, p.lambda, diag);
}

Eigen::VectorXd solve_by_rescaling(const WlsProblem& p, WlsDiagnostics* diag) {
  p.validate();
  const Eigen::VectorXd root = p.weights.cwiseSqrt();
  const Eigen::MatrixXd xs = root.asDiagonal() * p.X;
  const Eigen::VectorXd ys = root.cwiseProduct(p.y);
  Eigen::MatrixXd gram = xs.transpose() * xs;
  gram.diagonal().array() += p.lambda;
  const Eigen::VectorXd rhs = xs.transpose() * ys;
  return solve_gram(gram, rhs, p.lambda, diag);
}

}  // namespace crowdweight
