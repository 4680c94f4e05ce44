// Real and complex phase machinery: minimization of Phi_delta, the stationary
// point s(delta), phi(delta), the Hessian form B and the lemma diagnostics.
#pragma once

#include <Eigen/Dense>

#include <string>

#include "bwalk/special.hpp"

namespace bwalk {

struct PhaseProblem {
  // delta in fundamental-weight coordinates; delta_j >= 0, |delta| < 1.
  Eigen::VectorXd delta;
};

struct PhaseSolution {
  Eigen::VectorXd s_alpha;    // s^j = <lambda_j, s>: coordinates in the alpha basis
  Eigen::VectorXd s_lambda;   // s_j = <alpha_j, s>: coordinates in the lambda basis
  Eigen::VectorXd s_ambient;
  double phi = 0;             // min Phi_delta
  double grad_residual = 0;   // ||dh(s)/h(s) - delta||_inf
  Eigen::MatrixXd B;          // -d^2 Psi(0) = d^2 log h (s), alpha-basis coordinates
  int iterations = 0;
};

// Newton solve of dh(s)/h(s) = delta on the strictly convex Phi_delta.
// Throws std::domain_error for |delta| >= 1 - 1e-8 or negative coordinates,
// std::runtime_error on non-convergence.
PhaseSolution solve_stationary(const WalkParams& p, const Eigen::VectorXd& delta);

// Internal variant without the chamber check (used by finite-difference probes).
PhaseSolution solve_stationary_unchecked(const WalkParams& p, const Eigen::VectorXd& delta);

// max_j | d/d delta_j phi + s^j | by central differences with step 1e-5.
double dphi_check(const WalkParams& p, const Eigen::VectorXd& delta);

// Hessian form B at a point s given in alpha coordinates.
Eigen::MatrixXd hessian_B(const WalkParams& p, const Eigen::VectorXd& s_alpha);

// Rank 2: min/max over an (s, theta) grid of
//   B(theta,theta) / [ e^{-(s^1-s^2)} (theta^1-theta^2)^2 + e^{-s^2} (theta^1+theta^2)^2 ].
std::pair<double, double> lemma36_band(const WalkParams& p);

// Rank 2: min over the (s, theta) grids of -log(|h(s+i theta)|/h(s)) / B(theta,theta),
// s^1, s^2 in [0, s_max], theta on U minus balls of the given radius at 2 pi Q points.
double global_psi_min(const WalkParams& p, double s_max = 8.0, int s_steps = 17,
                      int theta_steps = 101, double exclusion = 1e-3);

struct PhaseDiagnostics {
  std::pair<double, double> band_e;   // (1-|delta|) e^{s^1 /\ s^2}
  std::pair<double, double> band_f;   // e^{-|s^1-s^2|} / (1 - delta_1 \/ delta_2)
  int sign_violations = 0;            // Lemma (g): sign(delta_1-delta_2) vs sign(s_1-s_2)
  int wall_violations = 0;            // Lemma (d): delta_j = 0 <=> s_j = 0
  double min_h_one_minus_delta = 0;   // min h(s)(1-|delta|); >= 2 for any rank
  double min_denominator_ratio = 0;   // min_n,theta |h(s+i theta)+2(n+1)/(n+3)| n / h(s)
  double im_psi_constant = 0;         // measured sup |Im Psi| / (|theta| B(theta,theta))
  bool pass = false;
  std::string message;
};

PhaseDiagnostics lemma_diagnostics(const WalkParams& p, int random_deltas = 200,
                                   unsigned seed = 42);

}  // namespace bwalk
