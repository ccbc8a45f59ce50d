#pragma once

#include "vstab/geometry.hpp"
#include "vstab/kernels.hpp"
#include "vstab/multiindex.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

// Independent brute-force verifiers, kept out of the production path:
// an exact rational pipeline (symbolic expansion and fraction-free
// elimination) and dense direction grids. These anchor the floating-point
// modules in the test tier and in the `oracle-check` subcommand.

namespace vstab::oracle {

using Int = boost::multiprecision::cpp_int;
// Reduced fraction with positive denominator; numerator carries the sign.
using Rational = boost::multiprecision::cpp_rational;

// Exact binary expansion of a double (every finite double is rational).
Rational rational_from_double(double x);

double to_double(const Rational& q);

// Exact coefficients of prod_{i != j} (t - t_i) / (t_j - t_i) by repeated
// symbolic multiplication. Throws ContractError on duplicate nodes.
std::vector<Rational> exact_lagrange_univariate(const std::vector<Rational>& t,
                                                int node_index);

struct ExactSolveResult {
    int rank = 0;                 // exact row rank of the Vandermonde matrix
    std::vector<Rational> coeffs; // solution of V c = e_j supported on the
                                  // pivot columns; empty when rank < s
};

// Fraction-free (Bareiss) elimination of the exact-rational system
// V_N(Z) c = e_j. Pivots take the first independent monomial columns in
// the graded order; free coordinates are zero.
ExactSolveResult exact_vandermonde_solve(const std::vector<std::vector<Rational>>& points,
                                         int n, int N, int node_index);

// Exact expansion of p(<v, z>) in the monomial basis.
std::vector<Rational> exact_compose_linear(const std::vector<Rational>& p,
                                           const std::vector<Rational>& v,
                                           const MonomialOrder& order);

// Exhaustive direction-grid lower bound on the separation at node j:
// the pairwise gap for n = 1, an angle grid for n = 2, a Fibonacci sphere
// for n = 3. Requires resolution >= 1000.
double grid_rho(const NodeSet& Z, int node_index, std::size_t resolution,
                kernels::Exec exec = kernels::Exec::Parallel);

} // namespace vstab::oracle
