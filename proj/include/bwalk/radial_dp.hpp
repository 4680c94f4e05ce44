// Exact big-rational dynamic programming for the radial chain on P+ in ranks
// 1 and 2, plus the boundary path-counting combinatorics.
#pragma once

#include <map>
#include <vector>

#include "bwalk/special.hpp"

namespace bwalk {

enum class Region { Interior, Wall1, Wall2, Origin };

struct RadialTable {
  int rank = 0;
  long q = 0;
  // Increment (weight coordinates) and exact one-step probability, per region.
  std::map<Region, std::vector<std::pair<Weight, Rational>>> rows;
  BigInt step_denominator;  // least common denominator D of all entries
  Region region_of(const Weight& lambda) const;
  const std::vector<std::pair<Weight, Rational>>& row(const Weight& lambda) const;
};

// Exact transition table; rank 2 reproduces the distinguished table verbatim at
// c1 = c2 = 1/2 and extends it to weighted walks by sphere counts and wall
// folding; rank 1 is the (q+1)-regular tree. Rank >= 3 is unsupported here.
RadialTable build_table(const WalkParams& p);

// Law of the radial chain at successive times, numerators scaled by D^n.
class RadialChain {
 public:
  RadialChain(const WalkParams& p, int n_max);

  void step();
  void run_to(int n);
  int time() const { return time_; }
  int rank() const { return rank_; }
  const RadialTable& table() const { return table_; }

  // p+_n(0, lambda) at the current time, exact.
  Rational prob(const Weight& lambda) const;
  const BigInt& numerator(const Weight& lambda) const;
  BigInt denominator() const;             // D^time
  double log_prob(const Weight& lambda) const;   // -inf when zero
  // p_n(lambda) = p+_n(0,lambda) / N_lambda
  Rational density(const Weight& lambda) const;
  double log_density(const Weight& lambda) const;

  // Exact mass conservation: sum of numerators == D^time.
  bool mass_conserved() const;

  // All dominant weights with nonzero probability at the current time.
  std::vector<Weight> support() const;

 private:
  size_t index(const Weight& lambda) const;
  std::shared_ptr<const RootSystem> rs_;
  RadialTable table_;
  int rank_, n_max_, time_ = 0;
  int width_;
  std::vector<BigInt> cur_, next_;
  mutable std::map<std::vector<int>, BigInt> n_cache_;
  long q_;
};

// One-shot exact values.
Rational prob_dp(const WalkParams& p, int n, const Weight& lambda);
Rational density_dp(const WalkParams& p, int n, const Weight& lambda);

// Number of admissible paths 0 -> lambda in n steps (probabilities ignored), rank 2.
class PathCountDP {
 public:
  PathCountDP(int n_max);
  void step();
  int time() const { return time_; }
  const BigInt& count(const Weight& lambda) const;

 private:
  int n_max_, time_ = 0, width_;
  std::vector<BigInt> cur_, next_;
};

BigInt path_count(int n, const Weight& lambda);

// Closed-form lower-bound choice count n!/((x1-d)!(x2+2d)!) * (x2+d)!/(x2! d!),
// d = n - |lambda|; throws std::domain_error when d < 0; zero when x1 < d.
BigInt choice_count(int n, const Weight& lambda);

}  // namespace bwalk
