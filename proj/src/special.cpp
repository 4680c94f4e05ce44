#include "bwalk/special.hpp"

#include <cmath>
#include <map>

namespace bwalk {

WalkParams::WalkParams(int rank, long q)
    : rs_(std::make_shared<RootSystem>(rank)), q_(q), distinguished_(true), c1_(0), c2_(0) {
  if (q < 2) throw std::invalid_argument("WalkParams: q must be >= 2");
  init();
}

WalkParams::WalkParams(int rank, long q, const Rational& c1)
    : rs_(std::make_shared<RootSystem>(rank)), q_(q), distinguished_(false), c1_(c1),
      c2_(Rational(1) - c1) {
  if (q < 2) throw std::invalid_argument("WalkParams: q must be >= 2");
  if (rank != 2) throw std::invalid_argument("WalkParams: weighted walks only in rank 2");
  if (c1_ <= 0 || c2_ <= 0) throw std::invalid_argument("WalkParams: need 0 < c1 < 1");
  if (c1_ == Rational(1, 2)) distinguished_ = true;  // the distinguished walk itself
  init();
}

Rational WalkParams::orbit_weight(int j) const {
  if (distinguished_ && c1_ == 0) return Rational(1);
  return (j == 1) ? 2 * c1_ : 2 * c2_;
}

void WalkParams::init() {
  const RootSystem& rs = *rs_;
  const int r = rs.rank();
  h_zero_ = 0;
  for (int j = 1; j <= r; ++j) {
    const Rational w = orbit_weight(j);
    const double wd = to_double(w);
    for (const auto& mu : rs.orbit(rs.fundamental_weight(j))) {
      HTerm t;
      t.weight = wd;
      t.mu = mu;
      t.ambient = rs.ambient(mu);
      t.alpha_pairings.resize(r);
      for (int a = 1; a <= r; ++a) t.alpha_pairings(a - 1) = static_cast<int>(rs.pairing_root(a - 1, a, mu));
      h_terms_.push_back(std::move(t));
      h_zero_ += w;
    }
  }
  // sigma^{-1} = sum_j N_{lambda_j} q^{-<rho, lambda_j>}
  double inv = 0;
  bool exact_ok = true;
  Rational inv_exact = 0;
  for (int j = 1; j <= r; ++j) {
    const Weight lj = rs.fundamental_weight(j);
    const BigInt nj = N_lambda(rs, lj, q_);
    const long m = rs.two_rho_pairing(lj);  // 2 <rho, lambda_j>
    inv += to_double(Rational(nj)) * std::pow(static_cast<double>(q_), -0.5 * m);
    if (m % 2 == 0) {
      inv_exact += Rational(nj, big_pow(q_, static_cast<unsigned>(m / 2)));
    } else {
      exact_ok = false;
    }
  }
  sigma_ = 1.0 / inv;
  log_sigma_ = -std::log(inv);
  sigma_bold_ = sigma_ * to_double(h_zero_);
  log_sigma_bold_ = log_sigma_ + std::log(to_double(h_zero_));
  if (exact_ok) {
    sigma_exact_ = Rational(1) / inv_exact;
    sigma_bold_exact_ = *sigma_exact_ * h_zero_;
  }
}

Rational poincare_full(const RootSystem& rs, long q) {
  Rational out = 0;
  for (const auto& w : rs.weyl()) out += Rational(1, big_pow(q, w.length));
  return out;
}

Rational poincare_stabilizer(const RootSystem& rs, const Weight& lambda, long q) {
  Rational out = 0;
  for (const auto& w : rs.weyl())
    if (rs.act(w, lambda) == lambda) out += Rational(1, big_pow(q, w.length));
  return out;
}

BigInt N_lambda(const RootSystem& rs, const Weight& lambda, long q) {
  if (!rs.is_dominant(lambda)) throw std::invalid_argument("N_lambda: lambda must be dominant");
  const long m = rs.two_rho_pairing(lambda);
  const Rational val = poincare_full(rs, q) / poincare_stabilizer(rs, lambda, q) *
                       Rational(big_pow(q, static_cast<unsigned>(m)));
  if (boost::multiprecision::denominator(val) != 1)
    throw std::logic_error("N_lambda: non-integer cardinality");
  return boost::multiprecision::numerator(val);
}

Complex h_eval(const WalkParams& p, const Eigen::VectorXcd& z_ambient) {
  Complex out(0.0);
  for (const auto& t : p.h_terms()) {
    Complex e(0.0);
    for (int m = 0; m < t.ambient.size(); ++m) e += t.ambient(m) * z_ambient(m);
    out += t.weight * std::exp(e);
  }
  return out;
}

Complex c_function(const RootSystem& rs, long q, const Eigen::VectorXcd& z_ambient) {
  const double qinv = 1.0 / static_cast<double>(q);
  Complex out(1.0);
  for (const auto& [i, k] : rs.pos_roots()) {
    const Complex em = std::exp(-(z_ambient(i) - z_ambient(k)));
    const Complex den = 1.0 - em;
    if (std::abs(den) < 1e-14)
      throw std::domain_error("c_function: evaluation on a singular wall");
    out *= (1.0 - qinv * em) / den;
  }
  return out;
}

double plancherel_density(const RootSystem& rs, long q, const Eigen::VectorXd& theta_ambient) {
  const double qinv = 1.0 / static_cast<double>(q);
  double out = 1.0;
  for (const auto& [i, k] : rs.pos_roots()) {
    const double u = theta_ambient(i) - theta_ambient(k);
    const Complex em = std::exp(Complex(0.0, -u));
    out *= std::norm(1.0 - em) / std::norm(1.0 - qinv * em);
  }
  return out;
}

Complex macdonald_P(const RootSystem& rs, long q, const Weight& lambda,
                    const Eigen::VectorXcd& z_ambient) {
  const Eigen::VectorXd lam = rs.ambient(lambda);
  Complex acc(0.0);
  Eigen::VectorXcd wz(rs.dim());
  for (const auto& w : rs.weyl()) {
    for (int m = 0; m < rs.dim(); ++m) wz(m) = z_ambient(w.perm[m]);
    Complex e(0.0);
    for (int m = 0; m < rs.dim(); ++m) e += lam(m) * wz(m);
    acc += c_function(rs, q, wz) * std::exp(e);
  }
  const double norm = to_double(poincare_full(rs, q));
  const double qpow = std::pow(static_cast<double>(q), -0.5 * rs.two_rho_pairing(lambda));
  return acc * (qpow / norm);
}

F0Exact F0_exact(const RootSystem& rs, const Weight& lambda, long q) {
  if (!rs.is_dominant(lambda)) throw std::invalid_argument("F0: lambda must be dominant");
  const int r = rs.rank();
  if (r > 5) throw std::invalid_argument("F0_exact: rank > 5 unsupported");
  const Rational qinv(1, q);
  // b as an ExpPoly: prod_{alpha in R+} (1 - q^{-1} e^{-alpha})
  ExpPoly b = ExpPoly::constant(r, Rational(1));
  for (const auto& [i, k] : rs.pos_roots()) {
    Weight alpha = rs.zero_weight();
    for (int j = i; j < k; ++j) alpha += rs.simple_root(j + 1);
    b = b * (ExpPoly::constant(r, Rational(1)) -
             ExpPoly::exponential(r, Weight(-2 * alpha), qinv));
  }
  // Alternant sum_w det(w) e^{w(lambda+rho)} b(w .): exponents transform by w.
  const Weight lr = lambda + rs.rho();
  ExpPoly alternant(r);
  for (const auto& w : rs.weyl()) {
    const Weight shift = rs.act(w, lr);
    for (const auto& [key, c] : b.terms()) {
      const Weight mu = ExpPoly::unpack(key, r);  // doubled, even entries (root lattice)
      Weight half(mu / 2);
      const Weight img = rs.act(w, half);
      alternant.add_term(Weight(2 * (img + shift)), c * w.sign);
    }
  }
  const ExpPoly quotient = alternant.divide_exact(ExpPoly::weyl_denominator(rs));
  Rational sum = 0;  // evaluation at z = 0
  for (const auto& [key, c] : quotient.terms()) sum += c;
  F0Exact out;
  out.rational_part = sum / poincare_full(rs, q);
  out.two_rho_pairing = rs.two_rho_pairing(lambda);
  out.value = to_double(out.rational_part) *
              std::pow(static_cast<double>(q), -0.5 * out.two_rho_pairing);
  if (out.value <= 0) throw std::logic_error("F0: nonpositive value");
  return out;
}

double F0(const WalkParams& p, const Weight& lambda) { return F0_exact(p.rs(), lambda, p.q()).value; }

double F0_extrapolated(const RootSystem& rs, const Weight& lambda, long q) {
  // Generic direction u = rho + 0.318 lambda_1, scaled steps eps = 1e-2 / 2^k.
  const Eigen::VectorXd u =
      rs.ambient(rs.rho()) + 0.318 * rs.ambient(rs.fundamental_weight(1));
  constexpr int kMax = 9;
  std::vector<std::vector<double>> t;  // Neville tableau rows
  for (int k = 0; k < kMax; ++k) {
    const double eps = 1e-2 / std::pow(2.0, k);
    const Eigen::VectorXcd z = (eps * u).cast<Complex>();
    t.emplace_back(1, macdonald_P(rs, q, lambda, z).real());
    for (int j = 1; j <= k; ++j) {
      const double w = std::pow(2.0, j);
      t[k].push_back((w * t[k][j - 1] - t[k - 1][j - 1]) / (w - 1.0));
    }
    if (k >= 2) {
      const double a = t[k][k], b = t[k - 1][k - 1];
      const double spread = std::abs(a - b) / std::max(1e-300, std::abs(a));
      if (spread < 1e-8) return a;
    }
  }
  const double a = t[kMax - 1][kMax - 1], b = t[kMax - 2][kMax - 2];
  if (std::abs(a - b) / std::max(1e-300, std::abs(a)) > 1e-6)
    throw std::runtime_error("F0_extrapolated: extrapolants did not settle");
  return a;
}

double F0_estimate(const RootSystem& rs, const Weight& lambda, long q) {
  double prod = 1.0;
  for (const auto& [i, k] : rs.pos_roots())
    prod *= 1.0 + static_cast<double>(rs.pairing_root(i, k, lambda));
  return prod * std::pow(static_cast<double>(q), -0.5 * rs.two_rho_pairing(lambda));
}

}  // namespace bwalk
