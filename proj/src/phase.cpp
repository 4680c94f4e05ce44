#include "bwalk/phase.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <random>
#include <sstream>

namespace bwalk {

namespace {

// h and its first two derivatives as functions of the alpha coordinates
// u (z = sum u_j alpha_j), using <mu, z> = sum_j <mu, alpha_j> u_j.
struct HState {
  double h = 0;
  Eigen::VectorXd grad;   // dh(s)/h(s) in lambda coordinates
  Eigen::MatrixXd hess;   // d^2 log h
};

HState h_state(const WalkParams& p, const Eigen::VectorXd& u) {
  const int r = p.rank();
  HState st;
  st.grad = Eigen::VectorXd::Zero(r);
  st.hess = Eigen::MatrixXd::Zero(r, r);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(r, r);
  for (const auto& t : p.h_terms()) {
    double e = 0;
    for (int j = 0; j < r; ++j) e += t.alpha_pairings(j) * u(j);
    const double v = t.weight * std::exp(e);
    st.h += v;
    for (int j = 0; j < r; ++j) {
      st.grad(j) += v * t.alpha_pairings(j);
      for (int k = j; k < r; ++k) second(j, k) += v * t.alpha_pairings(j) * t.alpha_pairings(k);
    }
  }
  st.grad /= st.h;
  for (int j = 0; j < r; ++j)
    for (int k = j; k < r; ++k) {
      const double v = second(j, k) / st.h - st.grad(j) * st.grad(k);
      st.hess(j, k) = st.hess(k, j) = v;
    }
  return st;
}

double phi_value(const WalkParams& p, const Eigen::VectorXd& delta, const Eigen::VectorXd& u) {
  double h = 0;
  for (const auto& t : p.h_terms()) {
    double e = 0;
    for (int j = 0; j < p.rank(); ++j) e += t.alpha_pairings(j) * u(j);
    h += t.weight * std::exp(e);
  }
  return std::log(h / to_double(p.h_zero())) - delta.dot(u);
}

PhaseSolution solve_impl(const WalkParams& p, const Eigen::VectorXd& delta) {
  const int r = p.rank();
  const double abs_delta = delta.sum();

  // Warm start tracking the |delta| -> 1 blow-up: s0 = log((1+|d|)/(1-|d|)) rho / r.
  Eigen::VectorXd u(r);
  const double scale = std::log((1.0 + std::abs(abs_delta)) / std::max(1e-300, 1.0 - std::abs(abs_delta))) / r;
  for (int j = 1; j <= r; ++j) u(j - 1) = scale * 0.5 * j * (r + 1 - j);

  double fval = phi_value(p, delta, u);
  PhaseSolution sol;
  constexpr int kMaxIter = 200;
  int it = 0;
  for (; it < kMaxIter; ++it) {
    HState st = h_state(p, u);
    const Eigen::VectorXd grad = st.grad - delta;
    sol.grad_residual = grad.lpNorm<Eigen::Infinity>();
    if (sol.grad_residual <= 1e-13) break;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(st.hess);
    Eigen::VectorXd step = -ldlt.solve(grad);
    if (!step.allFinite()) step = -grad;
    // Armijo backtracking with halving.
    double tstep = 1.0;
    const double slope = grad.dot(step);
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Eigen::VectorXd cand = u + tstep * step;
      const double fc = phi_value(p, delta, cand);
      if (std::isfinite(fc) && fc <= fval + 1e-4 * tstep * slope) {
        u = cand;
        fval = fc;
        moved = true;
        break;
      }
      tstep *= 0.5;
    }
    if (!moved) break;  // stagnation; residual re-checked below
  }
  HState st = h_state(p, u);
  sol.grad_residual = (st.grad - delta).lpNorm<Eigen::Infinity>();
  if (sol.grad_residual > 1e-12)
    throw std::runtime_error("solve_stationary: Newton did not reach 1e-12 residual");
  sol.iterations = it;
  sol.s_alpha = u;
  sol.s_ambient = p.rs().ambient_from_alpha(u);
  sol.s_lambda.resize(r);
  for (int j = 0; j < r; ++j)
    sol.s_lambda(j) = sol.s_ambient(j) - sol.s_ambient(j + 1);  // <alpha_j, s>
  sol.phi = phi_value(p, delta, u);
  sol.B = st.hess;
  return sol;
}

}  // namespace

PhaseSolution solve_stationary(const WalkParams& p, const Eigen::VectorXd& delta) {
  if (delta.size() != p.rank()) throw std::invalid_argument("solve_stationary: rank mismatch");
  if ((delta.array() < 0).any())
    throw std::domain_error("solve_stationary: delta outside the closed chamber");
  if (delta.sum() >= 1.0 - 1e-8)
    throw std::domain_error("solve_stationary: |delta| too close to 1");
  return solve_impl(p, delta);
}

PhaseSolution solve_stationary_unchecked(const WalkParams& p, const Eigen::VectorXd& delta) {
  return solve_impl(p, delta);
}

double dphi_check(const WalkParams& p, const Eigen::VectorXd& delta) {
  const PhaseSolution sol = solve_stationary_unchecked(p, delta);
  const double step = 1e-5;
  double worst = 0;
  for (int j = 0; j < p.rank(); ++j) {
    Eigen::VectorXd dp = delta, dm = delta;
    dp(j) += step;
    dm(j) -= step;
    const double fd = (solve_stationary_unchecked(p, dp).phi -
                       solve_stationary_unchecked(p, dm).phi) / (2 * step);
    worst = std::max(worst, std::abs(fd + sol.s_alpha(j)));
  }
  return worst;
}

Eigen::MatrixXd hessian_B(const WalkParams& p, const Eigen::VectorXd& s_alpha) {
  return h_state(p, s_alpha).hess;
}

namespace {

Complex h_at(const WalkParams& p, const Eigen::VectorXd& u_alpha, const Eigen::VectorXd& theta_alpha) {
  Complex out(0.0);
  for (const auto& t : p.h_terms()) {
    double re = 0, im = 0;
    for (int j = 0; j < p.rank(); ++j) {
      re += t.alpha_pairings(j) * u_alpha(j);
      im += t.alpha_pairings(j) * theta_alpha(j);
    }
    out += t.weight * std::exp(Complex(re, im));
  }
  return out;
}

}  // namespace

std::pair<double, double> lemma36_band(const WalkParams& p) {
  if (p.rank() != 2) throw std::invalid_argument("lemma36_band: rank 2 only");
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  // s in the closed chamber with s^1 >= s^2 (i.e. s^2 <= s^1 <= 2 s^2).
  for (int a = 0; a <= 16; ++a) {
    const double s1 = 8.0 * a / 16;
    for (int b = 0; b <= 8; ++b) {
      const double s2 = 0.5 * s1 + 0.5 * s1 * b / 8;  // [s1/2, s1]
      Eigen::VectorXd s(2);
      s << s1, s2;
      const Eigen::MatrixXd B = hessian_B(p, s);
      for (int t = 0; t < 64; ++t) {
        const double ang = 2 * M_PI * t / 64;
        Eigen::Vector2d th(std::cos(ang), std::sin(ang));
        const double bq = th.dot(B * th);
        const double cmp = std::exp(-(s1 - s2)) * (th(0) - th(1)) * (th(0) - th(1)) +
                           std::exp(-s2) * (th(0) + th(1)) * (th(0) + th(1));
        if (cmp < 1e-14) continue;
        const double ratio = bq / cmp;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
  }
  return {lo, hi};
}

double global_psi_min(const WalkParams& p, double s_max, int s_steps, int theta_steps,
                      double exclusion) {
  if (p.rank() != 2) throw std::invalid_argument("global_psi_min: rank 2 only");
  const RootSystem& rs = p.rs();
  double best = std::numeric_limits<double>::infinity();
  // theta grid on U in alpha coordinates; membership: |<alpha, theta>| <= 2 pi.
  std::vector<Eigen::Vector2d> thetas;
  for (int a = 0; a < theta_steps; ++a)
    for (int b = 0; b < theta_steps; ++b) {
      const double u1 = -2 * M_PI + 4 * M_PI * a / (theta_steps - 1);
      const double u2 = -2 * M_PI + 4 * M_PI * b / (theta_steps - 1);
      if (std::abs(2 * u1 - u2) > 2 * M_PI || std::abs(2 * u2 - u1) > 2 * M_PI ||
          std::abs(u1 + u2) > 2 * M_PI)
        continue;
      // exclusion balls at 2 pi Q translates (Euclidean distance in the ambient)
      bool excluded = false;
      Eigen::VectorXd th_alpha(2);
      th_alpha << u1, u2;
      const Eigen::VectorXd th_amb = rs.ambient_from_alpha(th_alpha);
      for (int la = -2; la <= 2 && !excluded; ++la)
        for (int lb = -2; lb <= 2 && !excluded; ++lb) {
          Eigen::VectorXd lat(2);
          lat << 2 * M_PI * la, 2 * M_PI * lb;
          if ((th_amb - rs.ambient_from_alpha(lat)).norm() < exclusion) excluded = true;
        }
      if (!excluded) thetas.emplace_back(u1, u2);
    }
  for (int a = 0; a < s_steps; ++a)
    for (int b = 0; b < s_steps; ++b) {
      Eigen::VectorXd s(2);
      s << s_max * a / (s_steps - 1), s_max * b / (s_steps - 1);
      const double hs = std::abs(h_at(p, s, Eigen::VectorXd::Zero(2)));
      const Eigen::MatrixXd B = hessian_B(p, s);
      for (const auto& th : thetas) {
        Eigen::VectorXd tv(2);
        tv << th(0), th(1);
        const double num = -std::log(std::abs(h_at(p, s, tv)) / hs);
        const double bq = tv.dot(B * tv);
        if (bq < 1e-300) continue;
        best = std::min(best, num / bq);
      }
    }
  return best;
}

PhaseDiagnostics lemma_diagnostics(const WalkParams& p, int random_deltas, unsigned seed) {
  if (p.rank() != 2) throw std::invalid_argument("lemma_diagnostics: rank 2 only");
  PhaseDiagnostics diag;
  diag.band_e = {std::numeric_limits<double>::infinity(), 0};
  diag.band_f = {std::numeric_limits<double>::infinity(), 0};
  diag.min_h_one_minus_delta = std::numeric_limits<double>::infinity();
  diag.min_denominator_ratio = std::numeric_limits<double>::infinity();

  auto visit = [&](double d1, double d2) {
    Eigen::VectorXd delta(2);
    delta << d1, d2;
    const PhaseSolution sol = solve_stationary(p, delta);
    const double s1 = sol.s_alpha(0), s2 = sol.s_alpha(1);
    const double one_minus = 1.0 - (d1 + d2);
    // (e)
    const double be = one_minus * std::exp(std::min(s1, s2));
    diag.band_e.first = std::min(diag.band_e.first, be);
    diag.band_e.second = std::max(diag.band_e.second, be);
    // (f)
    const double denom = 1.0 - std::max(d1, d2);
    if (denom > 1e-13) {
      const double bf = std::exp(-std::abs(s1 - s2)) / denom;
      diag.band_f.first = std::min(diag.band_f.first, bf);
      diag.band_f.second = std::max(diag.band_f.second, bf);
    }
    // (g) sign agreement
    const double sd = d1 - d2, ss = sol.s_lambda(0) - sol.s_lambda(1);
    const auto sgn = [](double x) { return (x > 1e-11) - (x < -1e-11); };
    if (sgn(sd) != sgn(ss)) ++diag.sign_violations;
    // (d) wall behavior
    for (int j = 0; j < 2; ++j) {
      const bool dz = delta(j) < 1e-13, sz = std::abs(sol.s_lambda(j)) < 1e-9;
      if (dz != sz) ++diag.wall_violations;
    }
    // rank-r inequality h(s)(1-|delta|) >= 2
    const double hs = std::abs(h_at(p, sol.s_alpha, Eigen::VectorXd::Zero(2)));
    diag.min_h_one_minus_delta = std::min(diag.min_h_one_minus_delta, hs * one_minus);
  };

  // Deterministic simplex grid, including both walls.
  for (int i = 0; i <= 24; ++i)
    for (int j = 0; i + j <= 24; ++j) {
      const double d1 = 0.96 * i / 24, d2 = 0.96 * j / 24;
      if (d1 + d2 > 0.97) continue;
      visit(d1, d2);
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < random_deltas; ++i) {
    const double a = unif(rng), b = unif(rng);
    double d1 = a, d2 = b;
    if (d1 + d2 >= 0.995) {
      d1 *= 0.99 / (d1 + d2);
      d2 *= 0.99 / (d1 + d2);
    }
    visit(d1, d2);
  }

  // Corollary "NonzeroDenominator": delta away from 0 and from the extra wall.
  for (double gap : {0.20, 0.35, 0.5}) {
    for (double base : {0.1, 0.2, 0.3}) {
      const double d2 = base, d1 = base + gap;
      if (d1 + d2 > 0.95) continue;
      Eigen::VectorXd delta(2);
      delta << d1, d2;
      const PhaseSolution sol = solve_stationary(p, delta);
      const double hs = std::abs(h_at(p, sol.s_alpha, Eigen::VectorXd::Zero(2)));
      for (int n : {8, 16, 32, 64, 128}) {
        for (int t = 0; t < 48; ++t)
          for (int w = 1; w <= 8; ++w) {
            const double ang = 2 * M_PI * t / 48;
            Eigen::VectorXd th(2);
            th << (M_PI * w / 4) * std::cos(ang), (M_PI * w / 4) * std::sin(ang);
            const Complex val = h_at(p, sol.s_alpha, th) + 2.0 * (n + 1) / (n + 3);
            diag.min_denominator_ratio =
                std::min(diag.min_denominator_ratio, std::abs(val) * n / hs);
          }
      }
    }
  }

  // Im Psi = O(|theta| B(theta,theta)) constant, measured near 0.
  double imc = 0;
  for (double d1 : {0.05, 0.25, 0.45, 0.65}) {
    for (double d2 : {0.04, 0.2, 0.4}) {
      if (d1 + d2 > 0.95 || d2 > d1) continue;
      Eigen::VectorXd delta(2);
      delta << d1, d2;
      const PhaseSolution sol = solve_stationary(p, delta);
      const double hs = std::abs(h_at(p, sol.s_alpha, Eigen::VectorXd::Zero(2)));
      const Eigen::MatrixXd B = sol.B;
      for (int t = 0; t < 32; ++t)
        for (double rad : {0.05, 0.15, 0.3, 0.6}) {
          const double ang = 2 * M_PI * t / 32;
          Eigen::VectorXd th(2);
          th << rad * std::cos(ang), rad * std::sin(ang);
          const Complex ratio = h_at(p, sol.s_alpha, th) / hs;
          // Im Psi(theta) = arg(h(s+i theta)/h(s)) - <delta, theta>
          const double im = std::arg(ratio) - (delta(0) * th(0) + delta(1) * th(1));
          const double bq = th.dot(B * th);
          const double sz = th.norm() * bq;
          if (sz > 1e-12) imc = std::max(imc, std::abs(im) / sz);
        }
    }
  }
  diag.im_psi_constant = imc;

  diag.pass = diag.sign_violations == 0 && diag.wall_violations == 0 &&
              diag.min_h_one_minus_delta >= 2.0 - 1e-9 && diag.band_e.first > 0 &&
              diag.band_f.first > 0 && diag.min_denominator_ratio > 0;
  std::ostringstream os;
  os << "band_e=[" << diag.band_e.first << "," << diag.band_e.second << "] band_f=["
     << diag.band_f.first << "," << diag.band_f.second << "] h(s)(1-|d|)min="
     << diag.min_h_one_minus_delta << " denom_ratio_min=" << diag.min_denominator_ratio
     << " im_psi_const=" << diag.im_psi_constant;
  diag.message = os.str();
  return diag;
}

}  // namespace bwalk
