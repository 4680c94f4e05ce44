#include "bwalk/exppoly.hpp"

#include <sstream>

namespace bwalk {

ExpPoly::Key ExpPoly::pack(const Weight& doubled) {
  Key key = 0;
  const int r = static_cast<int>(doubled.size());
  for (int j = 0; j < kMaxRank; ++j) {
    const int c = (j < r) ? doubled(j) : 0;
    if (c <= -kOffset || c >= kOffset) throw std::overflow_error("ExpPoly: exponent out of range");
    key = (key << kFieldBits) | static_cast<Key>(c + kOffset);
  }
  return key;
}

Weight ExpPoly::unpack(Key key, int rank) {
  Weight x(rank);
  for (int j = kMaxRank - 1; j >= 0; --j) {
    const int c = static_cast<int>(key & ((1u << kFieldBits) - 1)) - kOffset;
    if (j < rank) x(j) = c;
    key >>= kFieldBits;
  }
  return x;
}

ExpPoly::Key ExpPoly::key_zero(int rank) { return pack(Weight::Zero(rank)); }

ExpPoly ExpPoly::exponential(int rank, const Weight& doubled, const Rational& coef) {
  ExpPoly f(rank);
  if (coef != 0) f.terms_[pack(doubled)] = coef;
  return f;
}

ExpPoly ExpPoly::constant(int rank, const Rational& c) {
  return exponential(rank, Weight::Zero(rank), c);
}

void ExpPoly::add_term(const Weight& doubled, const Rational& coef) {
  if (coef == 0) return;
  const Key key = pack(doubled);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coef);
  } else {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  if (rank_ != other.rank_) throw std::invalid_argument("ExpPoly: rank mismatch");
  for (const auto& [key, c] : other.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& other) {
  if (rank_ != other.rank_) throw std::invalid_argument("ExpPoly: rank mismatch");
  for (const auto& [key, c] : other.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, -c);
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

ExpPoly ExpPoly::operator+(const ExpPoly& other) const {
  ExpPoly out = *this;
  out += other;
  return out;
}

ExpPoly ExpPoly::operator-(const ExpPoly& other) const {
  ExpPoly out = *this;
  out -= other;
  return out;
}

ExpPoly ExpPoly::operator*(const ExpPoly& other) const {
  if (rank_ != other.rank_) throw std::invalid_argument("ExpPoly: rank mismatch");
  ExpPoly out(rank_);
  if (terms_.empty() || other.terms_.empty()) return out;
  const Key zero = key_zero(rank_);
  // Iterate the smaller factor outside.
  const ExpPoly& small = (terms_.size() <= other.terms_.size()) ? *this : other;
  const ExpPoly& large = (terms_.size() <= other.terms_.size()) ? other : *this;
  for (const auto& [ka, ca] : small.terms_) {
    const Key shift = ka - zero;
    for (const auto& [kb, cb] : large.terms_) {
      const Key key = kb + shift;
      auto it = out.terms_.find(key);
      if (it == out.terms_.end()) {
        out.terms_.emplace(key, ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

ExpPoly ExpPoly::operator*(const Rational& scalar) const {
  ExpPoly out(rank_);
  if (scalar == 0) return out;
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, c * scalar);
  return out;
}

ExpPoly ExpPoly::pow(unsigned n) const {
  ExpPoly acc = constant(rank_, Rational(1));
  ExpPoly base = *this;
  while (n) {
    if (n & 1u) acc = acc * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return acc;
}

Rational ExpPoly::root_pairing_half(int i, int k, const Weight& doubled) {
  long s = 0;
  for (int j = i; j < k; ++j) s += doubled(j);
  return Rational(s, 2);
}

ExpPoly ExpPoly::directional_derivative(int i, int k) const {
  ExpPoly out(rank_);
  for (const auto& [key, c] : terms_) {
    const Weight mu = unpack(key, rank_);
    const Rational factor = root_pairing_half(i, k, mu);
    if (factor != 0) out.terms_.emplace(key, c * factor);
  }
  return out;
}

ExpPoly ExpPoly::pi_partial(const RootSystem& rs) const {
  ExpPoly out(rank_);
  for (const auto& [key, c] : terms_) {
    const Weight mu = unpack(key, rank_);
    Rational factor(1);
    for (const auto& [i, k] : rs.pos_roots()) {
      factor *= root_pairing_half(i, k, mu);
      if (factor == 0) break;
    }
    if (factor != 0) out.terms_.emplace(key, c * factor);
  }
  return out;
}

ExpPoly ExpPoly::divide_exact(const ExpPoly& divisor) const {
  if (rank_ != divisor.rank_) throw std::invalid_argument("ExpPoly: rank mismatch");
  if (divisor.is_zero()) throw std::domain_error("ExpPoly: division by zero");
  ExpPoly quotient(rank_);
  ExpPoly rem = *this;
  const auto lead = std::prev(divisor.terms_.end());
  const Key lead_key = lead->first;
  const Rational& lead_coef = lead->second;
  const Key zero = key_zero(rank_);
  // Bound the loop by a generous multiple of the support size; exact
  // divisibility makes the leading key strictly decrease each round.
  size_t guard = 4 * (rem.terms_.size() + 1) * (divisor.terms_.size() + 1) + 64;
  while (!rem.terms_.empty()) {
    if (guard-- == 0) throw std::domain_error("ExpPoly: division does not terminate (not divisible)");
    const auto top = std::prev(rem.terms_.end());
    const Key qkey = top->first - lead_key + zero;
    const Rational qcoef = top->second / lead_coef;
    // Validate the packed subtraction (no field underflow).
    const Weight qexp = unpack(qkey, rank_);
    ExpPoly qterm = exponential(rank_, qexp, qcoef);
    quotient += qterm;
    rem -= qterm * divisor;
    if (!rem.terms_.empty() && std::prev(rem.terms_.end())->first >= top->first)
      throw std::domain_error("ExpPoly: division failed (leading term did not cancel)");
  }
  return quotient;
}

std::complex<double> ExpPoly::eval(const RootSystem& rs, const Eigen::VectorXcd& z_ambient) const {
  if (z_ambient.size() != rank_ + 1) throw std::invalid_argument("ExpPoly::eval: size mismatch");
  // z^j = <lambda_j, z> = prefix sums of the zero-sum ambient coordinates
  Eigen::VectorXcd prefix(rank_);
  std::complex<double> acc(0.0);
  for (int j = 0; j < rank_; ++j) acc = prefix(j) = acc + z_ambient(j);
  std::complex<double> out(0.0);
  for (const auto& [key, c] : terms_) {
    const Weight mu = unpack(key, rank_);
    std::complex<double> expo(0.0);
    for (int j = 0; j < rank_; ++j) expo += 0.5 * static_cast<double>(mu(j)) * prefix(j);
    out += to_double(c) * std::exp(expo);
  }
  return out;
}

std::string ExpPoly::term_string(Key key) const {
  const Weight mu = unpack(key, rank_);
  std::ostringstream os;
  os << "exp(";
  for (int j = 0; j < rank_; ++j) {
    if (j) os << ",";
    os << mu(j) << "/2";
  }
  os << ")";
  return os.str();
}

ExpPoly ExpPoly::weyl_denominator(const RootSystem& rs) {
  const int r = rs.rank();
  ExpPoly out = constant(r, Rational(1));
  for (const auto& [i, k] : rs.pos_roots()) {
    // alpha/2 in doubled coordinates = alpha in weight coordinates
    Weight half = Weight::Zero(r);
    for (int j = i; j < k; ++j) {
      // alpha = alpha_{i+1} + ... + alpha_k (1-based); add each simple root
      Weight sr = rs.simple_root(j + 1);
      half += sr;
    }
    ExpPoly factor = exponential(r, half) - exponential(r, Weight(-half));
    out = out * factor;
  }
  return out;
}

ExpPoly ExpPoly::weyl_denominator_orbit(const RootSystem& rs) {
  const int r = rs.rank();
  ExpPoly out(r);
  const Weight rho = rs.rho();
  for (const auto& w : rs.weyl()) {
    Weight img = rs.act(w, rho);
    out.add_term(Weight(2 * img), Rational(w.sign));
  }
  return out;
}

ExpPoly ExpPoly::orbit_sum(const RootSystem& rs, const Weight& lambda) {
  ExpPoly out(rs.rank());
  for (const auto& mu : rs.orbit(lambda)) out.add_term(Weight(2 * mu), Rational(1));
  return out;
}

ExpPoly ExpPoly::h_distinguished(const RootSystem& rs) {
  ExpPoly out(rs.rank());
  for (int j = 1; j <= rs.rank(); ++j) out += orbit_sum(rs, rs.fundamental_weight(j));
  return out;
}

ExpPoly ExpPoly::h_weighted_rank2(const RootSystem& rs, const Rational& c1, const Rational& c2) {
  if (rs.rank() != 2) throw std::invalid_argument("h_weighted_rank2: rank must be 2");
  return orbit_sum(rs, rs.fundamental_weight(1)) * c1 +
         orbit_sum(rs, rs.fundamental_weight(2)) * c2;
}

}  // namespace bwalk
