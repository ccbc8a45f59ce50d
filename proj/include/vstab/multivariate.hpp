#pragma once

#include "vstab/geometry.hpp"
#include "vstab/multiindex.hpp"
#include "vstab/univariate.hpp"

#include <vector>

// Coefficient-bounded multivariate Lagrange polynomials: the univariate
// Lagrange basis polynomial along a witness direction v, expanded into the
// graded monomial basis through the multinomial theorem.

namespace vstab {

struct MultivariatePolynomial {
    MonomialOrder order;
    CoeffVector coeffs; // length order.size()

    double max_norm() const { return coeffs.max_norm(); }
};

// Expansion of p(<v, z>) into the monomial basis: the coefficient at alpha
// is p[|alpha|] * multinomial(|alpha|, alpha) * v^alpha.
MultivariatePolynomial compose_linear(const CoeffVector& p, const std::vector<double>& v,
                                      const MonomialOrder& order);

// Q_j with Q_j(z_i) = delta_ij, built from the certificate direction. The
// certificate is revalidated against Z; a gap drift above 1e-9 raises
// StaleCertificateError.
MultivariatePolynomial lagrange_polynomial(const NodeSet& Z, int node_index,
                                           const DirectionCertificate& cert, int N);

// P = sum_j y_j Q_j.
MultivariatePolynomial interpolant(const NodeSet& Z, const std::vector<double>& y,
                                   const std::vector<DirectionCertificate>& certs, int N);

// sum_alpha coeffs[alpha] z^alpha; per-coordinate powers by repeated
// squaring, compensated summation in the fixed graded order.
double evaluate(const MultivariatePolynomial& P, const std::vector<double>& z);

} // namespace vstab
