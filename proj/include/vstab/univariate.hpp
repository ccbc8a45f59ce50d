#pragma once

#include <vector>

// Univariate interpolation machinery: divided differences, Newton-form to
// monomial conversion, Lagrange basis coefficients via elementary symmetric
// sums, and the per-coefficient / coefficient-sum / divided-difference
// bound checks driven by the minimal node separation.

namespace vstab {

struct UnivariateNodes {
    std::vector<double> t; // distinct, within [-1, 1] up to 1e-12
    double kappa_1d = 0.0; // minimal pairwise gap

    static UnivariateNodes create(std::vector<double> t);
    int size() const { return static_cast<int>(t.size()); }
};

struct CoeffVector {
    std::vector<double> coeffs; // indexed by the fixed monomial order

    double max_norm() const;
    bool operator==(const CoeffVector&) const = default;
};

// Leading divided differences of the full triangular table; delta[0] = y[0].
std::vector<double> divided_differences(const UnivariateNodes& nodes,
                                        const std::vector<double>& y);

// Monomial coefficients of sum_j delta_j * prod_{i<=j} (t - t_i).
CoeffVector newton_to_monomial(const UnivariateNodes& nodes,
                               const std::vector<double>& deltas);

// Coefficients of p_j(t) = prod_{i != j} (t - t_i) / (t_j - t_i).
CoeffVector lagrange_basis_coeffs(const UnivariateNodes& nodes, int node_index);

// e_0, ..., e_m of the given values; e_0 = 1. One-pass recurrence with the
// suffix updated in place, descending.
std::vector<double> elementary_symmetric(const std::vector<double>& values);

// Horner evaluation in the monomial basis.
double evaluate_poly(const CoeffVector& p, double t);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct UnivariateLemmaCertificate {
    std::vector<BoundCheck> coefficient;         // |c_k| vs (s-k)(4/kappa)^(s-1) * ||y||
    BoundCheck coefficient_sum;                  // sum |c_k| vs s(s+1)/2 * ...
    std::vector<BoundCheck> divided_difference;  // |delta_j| vs 2^j ||y|| / kappa^j
    CoeffVector coeffs;
    bool passed = false;
    int violating_index = -1; // first failing k (or j offset into the dd checks)
};

// Computes the interpolant coefficients and evaluates both sides of every
// inequality; a failed check is recorded, never swallowed.
UnivariateLemmaCertificate check_lemma_univariate(const UnivariateNodes& nodes,
                                                  const std::vector<double>& y,
                                                  double rel_slack = 1e-9);

} // namespace vstab
