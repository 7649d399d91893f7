#pragma once

#include <Eigen/Dense>

namespace crowdweight {

/// Weighted ridge regression instance: minimize over w
///   sum_i weights_i (<w, x_i> - y_i)^2 + lambda ||w||^2,
/// solved in closed form as w = (X' D X + lambda I)^{-1} X' D y. The data
/// term is unnormalized; a 1/m convention is absorbed into lambda by callers.
struct WlsProblem {
  Eigen::MatrixXd X;        // m x n
  Eigen::VectorXd y;        // m
  Eigen::VectorXd weights;  // m, nonnegative
  double lambda = 0.0;      // nonnegative

  void validate() const;
};

struct WlsDiagnostics {
  double rcond = 1.0;             // reciprocal condition estimate of the Gram system
  bool used_fallback = false;     // Cholesky failed, pivoted LU used
  bool condition_warning = false; // condition number above 1e12
  bool lambda_zero = false;       // solved without regularization
};

/// Closed-form solve via Cholesky on the n x n Gram system, pivoted LU
/// fallback. Throws SingularMatrixError when lambda = 0 and X'DX is singular.
Eigen::VectorXd solve(const WlsProblem& p, WlsDiagnostics* diag = nullptr);

/// Same minimizer through the rescaling route: X <- sqrt(D) X, y <- sqrt(D) y,
/// then an unweighted ridge solve. Agrees with solve() to ~1e-10.
Eigen::VectorXd solve_by_rescaling(const WlsProblem& p, WlsDiagnostics* diag = nullptr);

}  // namespace crowdweight
