#include "vstab/multivariate.hpp"

#include "vstab/dd.hpp"
#include "vstab/errors.hpp"

#include <cmath>
#include <string>

namespace vstab {

using detail::dd;

MultivariatePolynomial compose_linear(const CoeffVector& p, const std::vector<double>& v,
                                      const MonomialOrder& order) {
    const int degree = static_cast<int>(p.coeffs.size()) - 1;
    if (degree > order.max_degree())
        throw ContractError("compose_linear: polynomial degree exceeds the basis degree");
    if (static_cast<int>(v.size()) != order.n())
        throw ContractError("compose_linear: direction dimension mismatch");

    const int n = order.n();
    // per-coordinate power table of v up to the univariate degree
    std::vector<dd> powers(static_cast<std::size_t>(n) * (degree + 1));
    for (int l = 0; l < n; ++l) {
        powers[static_cast<std::size_t>(l) * (degree + 1)] = dd(1.0);
        for (int d = 1; d <= degree; ++d)
            powers[static_cast<std::size_t>(l) * (degree + 1) + d] =
                powers[static_cast<std::size_t>(l) * (degree + 1) + d - 1] * v[static_cast<std::size_t>(l)];
    }

    MultivariatePolynomial out{order, CoeffVector{std::vector<double>(order.size(), 0.0)}};
    for (std::size_t k = 0; k < order.size(); ++k) {
        const MultiIndex& alpha = order.at(k);
        int total = alpha.total_degree();
        if (total > degree) continue; // exact zero beyond the univariate degree
        dd value(p.coeffs[static_cast<std::size_t>(total)]);
        value *= dd(static_cast<double>(multinomial(total, alpha)));
        for (int l = 0; l < n; ++l)
            value *= powers[static_cast<std::size_t>(l) * (degree + 1) +
                            alpha.exponents[static_cast<std::size_t>(l)]];
        out.coeffs.coeffs[k] = detail::to_double(value);
    }
    return out;
}

namespace {

// Univariate Lagrange coefficients on the projected nodes t_i = <v, z_i>.
// Only t_j - t_i != 0 for i != j is required; projections of two other
// nodes may coincide.
CoeffVector projected_lagrange(const NodeSet& Z, int node_index,
                               const std::vector<double>& v) {
    const int s = Z.size();
    std::vector<dd> t(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) {
        const auto& zi = Z.points[static_cast<std::size_t>(i)];
        t[static_cast<std::size_t>(i)] = detail::dot(v.data(), zi.data(), v.size());
    }
    std::vector<dd> poly{dd(1.0)};
    dd divisor(1.0);
    const dd tj = t[static_cast<std::size_t>(node_index)];
    for (int i = 0; i < s; ++i) {
        if (i == node_index) continue;
        poly.push_back(dd(0.0));
        for (std::size_t k = poly.size() - 1; k > 0; --k)
            poly[k] = poly[k - 1] - poly[k] * t[static_cast<std::size_t>(i)];
        poly[0] = -(poly[0] * t[static_cast<std::size_t>(i)]);
        divisor *= tj - t[static_cast<std::size_t>(i)];
    }
    CoeffVector out;
    out.coeffs.resize(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k)
        out.coeffs[k] = detail::to_double(poly[k] / divisor);
    return out;
}

} // namespace

MultivariatePolynomial lagrange_polynomial(const NodeSet& Z, int node_index,
                                           const DirectionCertificate& cert, int N) {
    const int s = Z.size();
    if (node_index < 0 || node_index >= s)
        throw ContractError("lagrange_polynomial: node index out of range");
    if (N < s - 1)
        throw ContractError("lagrange_polynomial: degree must be at least s - 1 = " +
                            std::to_string(s - 1));
    if (!(cert.delta > 0.0))
        throw ContractError("lagrange_polynomial: certificate gap must be positive");
    double recomputed = projection_gap(Z, node_index, cert.v);
    if (std::fabs(recomputed - cert.delta) > 1e-9)
        throw StaleCertificateError(
            "lagrange_polynomial: certificate gap " + std::to_string(cert.delta) +
            " differs from recomputed " + std::to_string(recomputed));

    CoeffVector p = projected_lagrange(Z, node_index, cert.v);
    return compose_linear(p, cert.v, MonomialOrder(Z.n, N));
}

MultivariatePolynomial interpolant(const NodeSet& Z, const std::vector<double>& y,
                                   const std::vector<DirectionCertificate>& certs, int N) {
    const int s = Z.size();
    if (static_cast<int>(y.size()) != s)
        throw ContractError("interpolant: data length does not match node count");
    if (static_cast<int>(certs.size()) != s)
        throw ContractError("interpolant: one certificate per node required");

    MonomialOrder order(Z.n, N);
    std::vector<dd> acc(order.size(), dd(0.0));
    for (int j = 0; j < s; ++j) {
        if (y[static_cast<std::size_t>(j)] == 0.0) continue;
        MultivariatePolynomial qj =
            lagrange_polynomial(Z, j, certs[static_cast<std::size_t>(j)], N);
        for (std::size_t k = 0; k < order.size(); ++k)
            acc[k] += detail::two_prod(y[static_cast<std::size_t>(j)], qj.coeffs.coeffs[k]);
    }
    MultivariatePolynomial out{std::move(order), CoeffVector{}};
    out.coeffs.coeffs.resize(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k)
        out.coeffs.coeffs[k] = detail::to_double(acc[k]);
    return out;
}

namespace {

double pow_by_squaring(double base, int exp) {
    double result = 1.0;
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

} // namespace

double evaluate(const MultivariatePolynomial& P, const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != P.order.n())
        throw ContractError("evaluate: point dimension mismatch");
    const int n = P.order.n();
    dd acc;
    for (std::size_t k = 0; k < P.order.size(); ++k) {
        double c = P.coeffs.coeffs[k];
        if (c == 0.0) continue;
        double monomial = 1.0;
        const MultiIndex& alpha = P.order.at(k);
        for (int l = 0; l < n; ++l)
            monomial *= pow_by_squaring(z[static_cast<std::size_t>(l)],
                                        alpha.exponents[static_cast<std::size_t>(l)]);
        acc += detail::two_prod(c, monomial);
    }
    return detail::to_double(acc);
}

} // namespace vstab
