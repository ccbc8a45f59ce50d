#include "vstab/univariate.hpp"

#include "vstab/dd.hpp"
#include "vstab/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vstab {

using detail::dd;

UnivariateNodes UnivariateNodes::create(std::vector<double> t) {
    if (t.size() < 2) throw ValidationError("univariate nodes: need at least 2 points");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]))
            throw ValidationError("univariate nodes: non-finite node " + std::to_string(i));
        if (std::fabs(t[i]) > 1.0 + 1e-12)
            throw ValidationError("univariate nodes: node " + std::to_string(i) +
                                  " outside [-1, 1]");
    }
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t k = i + 1; k < t.size(); ++k) {
            double d = std::fabs(t[i] - t[k]);
            if (d == 0.0)
                throw ValidationError("univariate nodes: nodes " + std::to_string(i) + " and " +
                                      std::to_string(k) + " coincide");
            gap = std::fmin(gap, d);
        }
    UnivariateNodes nodes;
    nodes.t = std::move(t);
    nodes.kappa_1d = gap;
    return nodes;
}

double CoeffVector::max_norm() const {
    double m = 0.0;
    for (double c : coeffs) m = std::fmax(m, std::fabs(c));
    return m;
}

std::vector<double> divided_differences(const UnivariateNodes& nodes,
                                        const std::vector<double>& y) {
    const std::size_t s = nodes.t.size();
    if (y.size() != s)
        throw ContractError("divided_differences: data length does not match node count");
    std::vector<dd> column(y.begin(), y.end());
    std::vector<double> leading(s);
    leading[0] = y[0];
    for (std::size_t order = 1; order < s; ++order) {
        for (std::size_t i = 0; i + order < s; ++i) {
            dd span = detail::two_sum(nodes.t[i + order], -nodes.t[i]);
            column[i] = (column[i + 1] - column[i]) / span;
        }
        leading[order] = detail::to_double(column[0]);
        column.pop_back();
    }
    return leading;
}

CoeffVector newton_to_monomial(const UnivariateNodes& nodes,
                               const std::vector<double>& deltas) {
    const std::size_t s = nodes.t.size();
    if (deltas.size() != s)
        throw ContractError("newton_to_monomial: delta length does not match node count");
    std::vector<dd> coeffs(s, dd(0.0));
    std::vector<dd> basis{dd(1.0)}; // running product prod_{i<=j} (t - t_i)
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t k = 0; k < basis.size(); ++k)
            coeffs[k] += basis[k] * deltas[j];
        if (j + 1 < s) {
            basis.push_back(dd(0.0));
            for (std::size_t k = basis.size() - 1; k > 0; --k)
                basis[k] = basis[k - 1] - basis[k] * nodes.t[j];
            basis[0] = -(basis[0] * nodes.t[j]);
        }
    }
    CoeffVector out;
    out.coeffs.resize(s);
    for (std::size_t k = 0; k < s; ++k) out.coeffs[k] = detail::to_double(coeffs[k]);
    return out;
}

namespace {

// Expanded coefficients of prod (t - values[i]) divided by divisor,
// entirely in compensated arithmetic.
std::vector<dd> scaled_root_product(const std::vector<double>& values, dd divisor) {
    std::vector<dd> poly{dd(1.0)};
    poly.reserve(values.size() + 1);
    for (double value : values) {
        poly.push_back(dd(0.0));
        for (std::size_t k = poly.size() - 1; k > 0; --k)
            poly[k] = poly[k - 1] - poly[k] * value;
        poly[0] = -(poly[0] * value);
    }
    for (auto& c : poly) c = c / divisor;
    return poly;
}

} // namespace

CoeffVector lagrange_basis_coeffs(const UnivariateNodes& nodes, int node_index) {
    const int s = nodes.size();
    if (node_index < 0 || node_index >= s)
        throw ContractError("lagrange_basis_coeffs: node index out of range");
    std::vector<double> others;
    others.reserve(static_cast<std::size_t>(s) - 1);
    dd divisor(1.0);
    const double tj = nodes.t[static_cast<std::size_t>(node_index)];
    for (int i = 0; i < s; ++i) {
        if (i == node_index) continue;
        others.push_back(nodes.t[static_cast<std::size_t>(i)]);
        divisor *= detail::two_sum(tj, -nodes.t[static_cast<std::size_t>(i)]);
    }
    auto poly = scaled_root_product(others, divisor);
    CoeffVector out;
    out.coeffs.resize(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) out.coeffs[k] = detail::to_double(poly[k]);
    return out;
}

std::vector<double> elementary_symmetric(const std::vector<double>& values) {
    std::vector<dd> e{dd(1.0)};
    e.reserve(values.size() + 1);
    for (double value : values) {
        e.push_back(dd(0.0));
        for (std::size_t k = e.size() - 1; k > 0; --k)
            e[k] += e[k - 1] * value;
    }
    std::vector<double> out(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) out[k] = detail::to_double(e[k]);
    return out;
}

double evaluate_poly(const CoeffVector& p, double t) {
    double acc = 0.0;
    for (std::size_t k = p.coeffs.size(); k-- > 0;) acc = acc * t + p.coeffs[k];
    return acc;
}

UnivariateLemmaCertificate check_lemma_univariate(const UnivariateNodes& nodes,
                                                  const std::vector<double>& y,
                                                  double rel_slack) {
    const int s = nodes.size();
    if (static_cast<int>(y.size()) != s)
        throw ContractError("check_lemma_univariate: data length mismatch");
    const double kappa = nodes.kappa_1d;
    if (kappa > 2.0)
        throw InternalError("check_lemma_univariate: separation above diameter of [-1, 1]");

    double y_norm = 0.0;
    for (double v : y) y_norm = std::fmax(y_norm, std::fabs(v));

    UnivariateLemmaCertificate cert;
    auto deltas = divided_differences(nodes, y);
    cert.coeffs = newton_to_monomial(nodes, deltas);

    const double growth = std::pow(4.0 / kappa, static_cast<double>(s - 1));

    cert.coefficient.resize(static_cast<std::size_t>(s));
    double coeff_sum = 0.0;
    for (int k = 0; k < s; ++k) {
        double lhs = std::fabs(cert.coeffs.coeffs[static_cast<std::size_t>(k)]);
        double rhs = y_norm * static_cast<double>(s - k) * growth;
        coeff_sum += lhs;
        cert.coefficient[static_cast<std::size_t>(k)] = {lhs, rhs, lhs <= rhs * (1.0 + rel_slack)};
    }
    {
        double rhs = 0.5 * static_cast<double>(s) * static_cast<double>(s + 1) * y_norm * growth;
        cert.coefficient_sum = {coeff_sum, rhs, coeff_sum <= rhs * (1.0 + rel_slack)};
    }
    cert.divided_difference.resize(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        double lhs = std::fabs(deltas[static_cast<std::size_t>(j)]);
        double rhs = std::pow(2.0 / kappa, static_cast<double>(j)) * y_norm;
        cert.divided_difference[static_cast<std::size_t>(j)] = {lhs, rhs,
                                                                lhs <= rhs * (1.0 + rel_slack)};
    }

    cert.passed = cert.coefficient_sum.pass;
    for (int k = 0; k < s; ++k) {
        if (!cert.coefficient[static_cast<std::size_t>(k)].pass ||
            !cert.divided_difference[static_cast<std::size_t>(k)].pass) {
            cert.passed = false;
            if (cert.violating_index < 0) cert.violating_index = k;
        }
    }
    if (!cert.coefficient_sum.pass && cert.violating_index < 0) cert.violating_index = s;
    return cert;
}

} // namespace vstab
