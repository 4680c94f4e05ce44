// Machine verification of the product / differentiation formulae satisfied by
// the averaging symbol h: exact coefficient-map equality in the ExpPoly ring.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwalk/exppoly.hpp"

namespace bwalk {

struct IdentityReport {
  std::string name;
  bool pass = false;
  std::string message;               // witness term on failure, extras on success
  std::vector<BigInt> c_coeffs;      // DifferentiationFormula1Ar: recovered c_k (k = r..|R+|-1)
  std::optional<Rational> d_n;       // DifferentiationFormula2Ar
};

// h + 2 = prod_{lambda in W0.lambda_1} (e^lambda + 1), any rank (distinguished h).
IdentityReport verify_product_formula_Ar(const RootSystem& rs);

// pi(d) h^{n+3} = (n+3)^2 (n+2) [h + 2(n+1)/(n+3)] h^n Delta, rank 2 distinguished.
IdentityReport verify_differentiation_formula_A2(const RootSystem& rs, int n);

// pi(d) h^n = c1 c2 n^2 (n-1) h^{n-2} Delta + (c1^3+c2^3) n (n-1) (n-2) h^{n-3} Delta
// for h = c1 h1 + c2 h2 (rank 2).
IdentityReport verify_general_differentiation_rank2(const RootSystem& rs, int n,
                                                    const Rational& c1, const Rational& c2);

// Product and differentiation formulae for ht = c1 c2 h + c1^3 + c2^3 (rank 2).
IdentityReport verify_product_diff_tilde(const RootSystem& rs, int n,
                                         const Rational& c1, const Rational& c2);

// pi(d) h^{n+|R+|} = ((n+|R+|)!/n!) r_n(h) h^n Delta with
// r_n(h) = (h+2)^{|R+|-r} + sum_{r<=k<|R+|} c_k (n!/(n+|R+|-k)!) (h+2)^{k-r} h^{|R+|-k};
// solves for the integer coefficients c_k and verifies the identity exactly.
IdentityReport verify_differentiation_formula_1_Ar(const RootSystem& rs, int n);

// pi(d) (h+2)^{n+r} = d_n (h+2)^n Delta; computes d_n by exact comparison.
IdentityReport verify_differentiation_formula_2_Ar(const RootSystem& rs, int n);

// Name-based dispatcher used by the CLI `verify identities` command.
// Names: ProductFormulaA2, DifferentiationFormulaA2, GeneralDifferentiationRankTwo,
// ProductDiffTilde, ProductFormulaAr, DifferentiationFormula1Ar, DifferentiationFormula2Ar.
std::vector<IdentityReport> run_identity(const std::string& name, int rank, int n_min, int n_max,
                                         const std::vector<std::pair<Rational, Rational>>& c_samples);

// The default 4x4 rational (c1, c2) grid used by the verification suites.
std::vector<std::pair<Rational, Rational>> default_c_grid();

}  // namespace bwalk
