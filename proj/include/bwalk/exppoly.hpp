// Exact exponential polynomials sum_mu c_mu e^mu over the half weight lattice,
// with rational coefficients. Exponents are stored as doubled fundamental-weight
// coordinates (integers representing halves), packed into a single 64-bit key
// so that the map order is lexicographic with the first coordinate major.
#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>

#include "bwalk/rational.hpp"
#include "bwalk/root_system.hpp"

namespace bwalk {

class ExpPoly {
 public:
  using Key = uint64_t;
  static constexpr int kFieldBits = 10;
  static constexpr int kMaxRank = 6;
  static constexpr int kOffset = 1 << (kFieldBits - 1);

  explicit ExpPoly(int rank) : rank_(rank) {}

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }
  const std::map<Key, Rational>& terms() const { return terms_; }

  static Key pack(const Weight& doubled);
  static Weight unpack(Key key, int rank);
  static Key key_zero(int rank);

  // e^{mu} with mu given in doubled weight coordinates.
  static ExpPoly exponential(int rank, const Weight& doubled, const Rational& coef = Rational(1));
  static ExpPoly constant(int rank, const Rational& c);

  void add_term(const Weight& doubled, const Rational& coef);

  ExpPoly& operator+=(const ExpPoly& other);
  ExpPoly& operator-=(const ExpPoly& other);
  ExpPoly operator+(const ExpPoly& other) const;
  ExpPoly operator-(const ExpPoly& other) const;
  ExpPoly operator*(const ExpPoly& other) const;
  ExpPoly operator*(const Rational& scalar) const;
  ExpPoly pow(unsigned n) const;
  bool operator==(const ExpPoly& other) const { return rank_ == other.rank_ && terms_ == other.terms_; }

  // <alpha, mu> for the packed exponent mu, as an exact rational (half-integers).
  static Rational root_pairing_half(int i, int k, const Weight& doubled);

  // Termwise c e^mu -> c <alpha, mu> e^mu for alpha = e_i - e_k.
  ExpPoly directional_derivative(int i, int k) const;
  // pi(d) f: termwise multiplication by prod_{alpha in R+} <alpha, mu>.
  ExpPoly pi_partial(const RootSystem& rs) const;

  // Exact division; throws std::domain_error when the divisor does not divide.
  ExpPoly divide_exact(const ExpPoly& divisor) const;

  // Evaluation at a complex ambient point.
  std::complex<double> eval(const RootSystem& rs, const Eigen::VectorXcd& z_ambient) const;

  std::string term_string(Key key) const;  // debug/witness formatting

  // Builders.
  static ExpPoly weyl_denominator(const RootSystem& rs);        // product over R+
  static ExpPoly weyl_denominator_orbit(const RootSystem& rs);  // sum_w det(w) e^{w rho}
  static ExpPoly orbit_sum(const RootSystem& rs, const Weight& lambda);
  static ExpPoly h_distinguished(const RootSystem& rs);
  // Appendix normalization c1 h1 + c2 h2 (rank 2); the walk's h is twice this
  // when c1 + c2 = 1.
  static ExpPoly h_weighted_rank2(const RootSystem& rs, const Rational& c1, const Rational& c2);

 private:
  int rank_;
  std::map<Key, Rational> terms_;
};

}  // namespace bwalk
