// Walk parameters and the special functions attached to the building:
// h, c, Plancherel density, Macdonald polynomials, sphere cardinalities and
// the fundamental spherical function F0.
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "bwalk/exppoly.hpp"
#include "bwalk/root_system.hpp"

namespace bwalk {

using Complex = std::complex<double>;

// One exponential term of h: weight coefficient times e^{<mu, z>}.
struct HTerm {
  double weight = 1.0;
  Weight mu;                 // lattice coordinates
  Eigen::VectorXd ambient;   // ambient coordinates of mu
  Eigen::VectorXi alpha_pairings;  // <mu, alpha_j>, j = 1..r
};

class WalkParams {
 public:
  // Distinguished walk (simple random walk for rank <= 2).
  WalkParams(int rank, long q);
  // Weighted nearest-neighbor walk, rank 2 only; c1 + c2 = 1, both positive.
  WalkParams(int rank, long q, const Rational& c1);

  int rank() const { return rs_->rank(); }
  long q() const { return q_; }
  const RootSystem& rs() const { return *rs_; }
  std::shared_ptr<const RootSystem> rs_ptr() const { return rs_; }
  bool is_distinguished() const { return distinguished_; }
  const Rational& c1() const { return c1_; }
  const Rational& c2() const { return c2_; }

  // Orbit weight of the j-th fundamental orbit in h (1-based j):
  // 1 for the distinguished walk, 2 c_j for weighted rank 2.
  Rational orbit_weight(int j) const;

  const std::vector<HTerm>& h_terms() const { return h_terms_; }
  Rational h_zero() const { return h_zero_; }      // h(0) = 2(2^r - 1)
  double sigma() const { return sigma_; }          // 1 / sum_j N_j q^{-<rho,lambda_j>}
  double log_sigma() const { return log_sigma_; }
  double spectral_radius() const { return sigma_bold_; }  // sigma * h(0)
  double log_spectral_radius() const { return log_sigma_bold_; }
  // Exact values where all <rho, lambda_j> are integers (e.g. rank 2).
  std::optional<Rational> sigma_exact() const { return sigma_exact_; }
  std::optional<Rational> spectral_radius_exact() const { return sigma_bold_exact_; }

 private:
  void init();
  std::shared_ptr<const RootSystem> rs_;
  long q_;
  bool distinguished_;
  Rational c1_, c2_;
  std::vector<HTerm> h_terms_;
  Rational h_zero_;
  double sigma_ = 0, log_sigma_ = 0, sigma_bold_ = 0, log_sigma_bold_ = 0;
  std::optional<Rational> sigma_exact_, sigma_bold_exact_;
};

// Poincare polynomial W(q^{-1}) = sum_{w in W} q^{-l(w)} of the full Weyl group.
Rational poincare_full(const RootSystem& rs, long q);
// Same for the stabilizer of lambda in W0.
Rational poincare_stabilizer(const RootSystem& rs, const Weight& lambda, long q);

// Sphere cardinality N_lambda (exact positive integer).
BigInt N_lambda(const RootSystem& rs, const Weight& lambda, long q);

// h(z) at a complex ambient point.
Complex h_eval(const WalkParams& p, const Eigen::VectorXcd& z_ambient);

// c-function; throws std::domain_error on a singular wall.
Complex c_function(const RootSystem& rs, long q, const Eigen::VectorXcd& z_ambient);

// |c(i theta)|^{-2}; continuous (vanishing) extension on the walls.
double plancherel_density(const RootSystem& rs, long q, const Eigen::VectorXd& theta_ambient);

// Macdonald polynomial P_lambda(z) via the symmetrized c-sum; z off singular walls.
Complex macdonald_P(const RootSystem& rs, long q, const Weight& lambda,
                    const Eigen::VectorXcd& z_ambient);

// F0(lambda) = P_lambda(0) through the exact alternant-quotient route:
// F0 = q^{-<rho,lambda>} * f where f is rational; returns (f, <rho,lambda> doubled).
struct F0Exact {
  Rational rational_part;  // f
  long two_rho_pairing;    // m with F0 = f * q^{-m/2}
  double value;            // f * q^{-m/2}
};
F0Exact F0_exact(const RootSystem& rs, const Weight& lambda, long q);

double F0(const WalkParams& p, const Weight& lambda);

// Regularized-limit evaluation by Richardson extrapolation of P_lambda(eps u);
// throws std::runtime_error when the extrapolants do not settle.
double F0_extrapolated(const RootSystem& rs, const Weight& lambda, long q);

// Two-sided envelope q^{-<rho,lambda>} prod_{alpha in R+} (1 + <alpha,lambda>).
double F0_estimate(const RootSystem& rs, const Weight& lambda, long q);

}  // namespace bwalk
