#include "bwalk/root_system.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bwalk {

RootSystem::RootSystem(int rank) : rank_(rank) {
  if (rank < 1 || rank > 6) throw std::invalid_argument("RootSystem: rank must be in 1..6");
  for (int i = 0; i <= rank; ++i)
    for (int k = i + 1; k <= rank; ++k) pos_roots_.emplace_back(i, k);

  std::vector<int> perm(rank + 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    WeylElement w;
    w.perm = perm;
    int inv = 0;
    for (size_t a = 0; a < perm.size(); ++a)
      for (size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b]) ++inv;
    w.length = inv;
    w.sign = (inv % 2 == 0) ? 1 : -1;
    weyl_.push_back(std::move(w));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

Weight RootSystem::fundamental_weight(int j) const {
  if (j < 1 || j > rank_) throw std::invalid_argument("fundamental_weight: index out of range");
  Weight x = Weight::Zero(rank_);
  x(j - 1) = 1;
  return x;
}

Weight RootSystem::simple_root(int j) const {
  if (j < 1 || j > rank_) throw std::invalid_argument("simple_root: index out of range");
  Weight x = Weight::Zero(rank_);
  x(j - 1) = 2;
  if (j >= 2) x(j - 2) = -1;
  if (j <= rank_ - 1) x(j) = -1;
  return x;
}

long RootSystem::pairing_root(int i, int k, const Weight& x) const {
  if (x.size() != rank_) throw std::invalid_argument("pairing_root: rank mismatch");
  // <e_i - e_k, sum_j x_j lambda_j> = x_{i+1} + ... + x_k in 1-based weight indices
  long s = 0;
  for (int j = i; j < k; ++j) s += x(j);
  return s;
}

Rational RootSystem::pairing_weight(const Weight& a, const Weight& b) const {
  if (a.size() != rank_ || b.size() != rank_)
    throw std::invalid_argument("pairing_weight: rank mismatch");
  // <lambda_i, lambda_j> = min(i,j) - i j/(r+1)  (1-based)
  BigInt acc = 0;  // (r+1) * pairing
  for (int i = 1; i <= rank_; ++i)
    for (int j = 1; j <= rank_; ++j) {
      const long g = static_cast<long>(std::min(i, j)) * (rank_ + 1) - static_cast<long>(i) * j;
      acc += BigInt(a(i - 1)) * b(j - 1) * g;
    }
  return Rational(acc, BigInt(rank_ + 1));
}

long RootSystem::two_rho_pairing(const Weight& x) const {
  // 2 <rho, lambda_j> = j (r+1-j)
  long s = 0;
  for (int j = 1; j <= rank_; ++j) s += static_cast<long>(x(j - 1)) * j * (rank_ + 1 - j);
  return s;
}

Eigen::VectorXd RootSystem::ambient(const Weight& x) const {
  return ambient_scaled(x).cast<double>() / static_cast<double>(rank_ + 1);
}

Eigen::VectorXi RootSystem::ambient_scaled(const Weight& x) const {
  if (x.size() != rank_) throw std::invalid_argument("ambient_scaled: rank mismatch");
  Eigen::VectorXi v = Eigen::VectorXi::Zero(rank_ + 1);
  // (r+1) lambda_j has ambient coordinates (r+1)[m <= j] - j
  for (int m = 1; m <= rank_ + 1; ++m) {
    int acc = 0;
    for (int j = 1; j <= rank_; ++j) acc += x(j - 1) * ((m <= j ? rank_ + 1 : 0) - j);
    v(m - 1) = acc;
  }
  return v;
}

Weight RootSystem::from_ambient_scaled(const Eigen::VectorXi& v) const {
  if (v.size() != rank_ + 1) throw std::invalid_argument("from_ambient_scaled: size mismatch");
  Weight x(rank_);
  for (int j = 0; j < rank_; ++j) {
    const int diff = v(j) - v(j + 1);
    if (diff % (rank_ + 1) != 0)
      throw std::invalid_argument("from_ambient_scaled: not a weight-lattice point");
    x(j) = diff / (rank_ + 1);
  }
  return x;
}

Weight RootSystem::act(const WeylElement& w, const Weight& x) const {
  const Eigen::VectorXi v = ambient_scaled(x);
  Eigen::VectorXi pv(rank_ + 1);
  for (int m = 0; m <= rank_; ++m) pv(m) = v(w.perm[m]);
  return from_ambient_scaled(pv);
}

std::vector<Weight> RootSystem::orbit(const Weight& x) const {
  std::set<std::vector<int>> seen;
  std::vector<Weight> out;
  for (const auto& w : weyl_) {
    Weight y = act(w, x);
    std::vector<int> key(y.data(), y.data() + y.size());
    if (seen.insert(std::move(key)).second) out.push_back(std::move(y));
  }
  return out;
}

Eigen::VectorXd RootSystem::ambient_from_alpha(const Eigen::VectorXd& u) const {
  if (u.size() != rank_) throw std::invalid_argument("ambient_from_alpha: rank mismatch");
  Eigen::VectorXd z = Eigen::VectorXd::Zero(rank_ + 1);
  for (int j = 1; j <= rank_; ++j) {  // alpha_j = e_{j-1} - e_j (0-based)
    z(j - 1) += u(j - 1);
    z(j) -= u(j - 1);
  }
  return z;
}

}  // namespace bwalk
