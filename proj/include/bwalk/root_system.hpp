// Exact geometry of the A_r root system: roots, weights, Weyl group action,
// pairings and coordinate conversions. Lattice vectors are kept as integer
// coordinates in the fundamental-weight basis; ambient zero-sum coordinates
// are derived on demand.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bwalk/rational.hpp"

namespace bwalk {

// Lattice vector in fundamental-weight coordinates (size = rank).
using Weight = Eigen::VectorXi;

struct WeylElement {
  // act(w, z)[m] = z[perm[m]] on ambient coordinates
  std::vector<int> perm;
  int sign = 1;    // det(w)
  int length = 0;  // number of inversions
};

class RootSystem {
 public:
  explicit RootSystem(int rank);

  int rank() const { return rank_; }
  int dim() const { return rank_ + 1; }
  int num_pos_roots() const { return static_cast<int>(pos_roots_.size()); }

  // Positive roots e_i - e_k as 0-based index pairs (i < k).
  const std::vector<std::pair<int, int>>& pos_roots() const { return pos_roots_; }

  const std::vector<WeylElement>& weyl() const { return weyl_; }
  int weyl_order() const { return static_cast<int>(weyl_.size()); }

  Weight zero_weight() const { return Weight::Zero(rank_); }
  Weight fundamental_weight(int j) const;  // 1-based j
  Weight rho() const { return Weight::Ones(rank_); }
  Weight simple_root(int j) const;  // 1-based j, in weight coordinates

  // <e_i - e_k, x> for a lattice vector x (exact integer).
  long pairing_root(int i, int k, const Weight& x) const;
  // Exact Gram pairing <a, b> of two lattice vectors; denominator divides rank+1.
  Rational pairing_weight(const Weight& a, const Weight& b) const;
  // 2 <rho, x>, always an integer.
  long two_rho_pairing(const Weight& x) const;

  bool is_dominant(const Weight& x) const { return (x.array() >= 0).all(); }
  long length_abs(const Weight& x) const { return x.cast<long>().sum(); }

  // Ambient (zero-sum) coordinates of a lattice vector.
  Eigen::VectorXd ambient(const Weight& x) const;
  // (rank+1) * ambient, exact integers.
  Eigen::VectorXi ambient_scaled(const Weight& x) const;
  Weight from_ambient_scaled(const Eigen::VectorXi& v) const;

  Weight act(const WeylElement& w, const Weight& x) const;
  std::vector<Weight> orbit(const Weight& x) const;

  // Ambient vector of a point given by real coordinates in the alpha-basis
  // (z = sum_j u_j alpha_j), and the inverse reading z^j = <lambda_j, z>.
  Eigen::VectorXd ambient_from_alpha(const Eigen::VectorXd& u) const;

 private:
  int rank_;
  std::vector<std::pair<int, int>> pos_roots_;
  std::vector<WeylElement> weyl_;
};

// Euclidean pairing of ambient vectors restricted to the zero-sum subspace.
template <typename Scalar>
Scalar pairing(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& a,
               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pairing: rank mismatch");
  return (a.array() * b.array()).sum();  // bilinear (no conjugation on the complexification)
}

// Fundamental skew polynomial pi(z) = prod_{alpha in R+} <alpha, z>.
template <typename Scalar>
Scalar pi_poly(const RootSystem& rs, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& z) {
  Scalar out(1);
  for (const auto& [i, k] : rs.pos_roots()) out *= z(i) - z(k);
  return out;
}

}  // namespace bwalk
