#include "vstab/oracle.hpp"

#include "vstab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace vstab::oracle {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw ContractError("rational_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mantissa = std::frexp(x, &exp); // x = mantissa * 2^exp, |mantissa| in [0.5, 1)
    auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    int e2 = exp - 53;
    Int num(scaled);
    if (e2 >= 0) return Rational(num << e2);
    return Rational(num, Int(1) << (-e2));
}

double to_double(const Rational& q) { return q.template convert_to<double>(); }

std::vector<Rational> exact_lagrange_univariate(const std::vector<Rational>& t,
                                                int node_index) {
    const int s = static_cast<int>(t.size());
    if (node_index < 0 || node_index >= s)
        throw ContractError("exact_lagrange_univariate: node index out of range");
    for (int i = 0; i < s; ++i)
        for (int k = i + 1; k < s; ++k)
            if (t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(k)])
                throw ContractError("exact_lagrange_univariate: duplicate nodes " +
                                    std::to_string(i) + " and " + std::to_string(k));

    std::vector<Rational> poly{Rational(1)};
    Rational divisor(1);
    const Rational& tj = t[static_cast<std::size_t>(node_index)];
    for (int i = 0; i < s; ++i) {
        if (i == node_index) continue;
        const Rational& ti = t[static_cast<std::size_t>(i)];
        poly.push_back(Rational(0));
        for (std::size_t k = poly.size() - 1; k > 0; --k)
            poly[k] = poly[k - 1] - poly[k] * ti;
        poly[0] = -poly[0] * ti;
        divisor *= tj - ti;
    }
    for (auto& c : poly) c /= divisor;
    return poly;
}

namespace {

Rational pow_rational(const Rational& base, int exp) {
    Rational r(1);
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Exact integer augmented matrix [V | e_j] with each row scaled by the
// least common multiple of its denominators.
std::vector<std::vector<Int>> integer_augmented_system(
    const std::vector<std::vector<Rational>>& points, const MonomialOrder& order,
    int node_index) {
    const std::size_t s = points.size();
    const std::size_t nu = order.size();
    std::vector<std::vector<Int>> M(s, std::vector<Int>(nu + 1));
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Rational> row(nu + 1);
        Int lcm(1);
        for (std::size_t k = 0; k < nu; ++k) {
            Rational entry(1);
            const auto& alpha = order.at(k).exponents;
            for (std::size_t l = 0; l < points[i].size(); ++l)
                entry *= pow_rational(points[i][l], alpha[l]);
            row[k] = entry;
            lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(entry));
        }
        row[nu] = Rational(i == static_cast<std::size_t>(node_index) ? 1 : 0);
        for (std::size_t k = 0; k <= nu; ++k) {
            Rational scaled = row[k] * lcm;
            if (boost::multiprecision::denominator(scaled) != 1)
                throw InternalError("integer_augmented_system: row scaling failed");
            M[i][k] = boost::multiprecision::numerator(scaled);
        }
    }
    return M;
}

} // namespace

ExactSolveResult exact_vandermonde_solve(const std::vector<std::vector<Rational>>& points,
                                         int n, int N, int node_index) {
    const int s = static_cast<int>(points.size());
    if (s < 2) throw ContractError("exact_vandermonde_solve: need at least 2 nodes");
    if (N < s - 1) throw ContractError("exact_vandermonde_solve: degree below s - 1");
    if (node_index < 0 || node_index >= s)
        throw ContractError("exact_vandermonde_solve: node index out of range");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != n)
            throw ContractError("exact_vandermonde_solve: point arity mismatch");

    MonomialOrder order(n, N);
    const std::size_t nu = order.size();
    auto M = integer_augmented_system(points, order, node_index);

    // Bareiss fraction-free elimination with row swaps; every division is
    // exact (checked) because each entry is a minor of the original matrix.
    std::vector<std::size_t> pivot_cols;
    Int prev(1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < nu && r < static_cast<std::size_t>(s); ++col) {
        std::size_t pivot_row = r;
        while (pivot_row < static_cast<std::size_t>(s) && M[pivot_row][col] == 0) ++pivot_row;
        if (pivot_row == static_cast<std::size_t>(s)) continue;
        std::swap(M[r], M[pivot_row]);
        for (std::size_t i = r + 1; i < static_cast<std::size_t>(s); ++i) {
            for (std::size_t c = col + 1; c <= nu; ++c) {
                Int numerator = M[r][col] * M[i][c] - M[i][col] * M[r][c];
                Int quotient, remainder;
                boost::multiprecision::divide_qr(numerator, prev, quotient, remainder);
                if (remainder != 0)
                    throw InternalError("exact_vandermonde_solve: inexact Bareiss division");
                M[i][c] = quotient;
            }
            M[i][col] = 0;
        }
        prev = M[r][col];
        pivot_cols.push_back(col);
        ++r;
    }

    ExactSolveResult result;
    result.rank = static_cast<int>(r);
    if (result.rank < s) return result;

    // Back-substitution on the pivot support.
    std::vector<Rational> x(nu, Rational(0));
    for (std::size_t k = r; k-- > 0;) {
        Rational acc(M[k][nu]);
        for (std::size_t m = k + 1; m < r; ++m)
            acc -= Rational(M[k][pivot_cols[m]]) * x[pivot_cols[m]];
        x[pivot_cols[k]] = acc / Rational(M[k][pivot_cols[k]]);
    }
    result.coeffs = std::move(x);
    return result;
}

std::vector<Rational> exact_compose_linear(const std::vector<Rational>& p,
                                           const std::vector<Rational>& v,
                                           const MonomialOrder& order) {
    const int degree = static_cast<int>(p.size()) - 1;
    if (degree > order.max_degree())
        throw ContractError("exact_compose_linear: degree exceeds the basis degree");
    if (static_cast<int>(v.size()) != order.n())
        throw ContractError("exact_compose_linear: direction dimension mismatch");
    std::vector<Rational> out(order.size(), Rational(0));
    for (std::size_t k = 0; k < order.size(); ++k) {
        const MultiIndex& alpha = order.at(k);
        int total = alpha.total_degree();
        if (total > degree) continue;
        Rational value = p[static_cast<std::size_t>(total)];
        value *= Rational(multinomial(total, alpha));
        for (std::size_t l = 0; l < v.size(); ++l)
            value *= pow_rational(v[l], alpha.exponents[l]);
        out[k] = value;
    }
    return out;
}

double grid_rho(const NodeSet& Z, int node_index, std::size_t resolution,
                kernels::Exec exec) {
    if (node_index < 0 || node_index >= Z.size())
        throw ContractError("grid_rho: node index out of range");
    if (resolution < 1000) throw ContractError("grid_rho: resolution below 1000");
    if (Z.n == 1) {
        double gap = std::numeric_limits<double>::infinity();
        const double zj = Z.points[static_cast<std::size_t>(node_index)][0];
        for (int i = 0; i < Z.size(); ++i) {
            if (i == node_index) continue;
            gap = std::fmin(gap, std::fabs(zj - Z.points[static_cast<std::size_t>(i)][0]));
        }
        return gap;
    }
    if (Z.n == 2) {
        std::vector<std::array<double, 2>> diffs;
        const auto& zj = Z.points[static_cast<std::size_t>(node_index)];
        for (int i = 0; i < Z.size(); ++i) {
            if (i == node_index) continue;
            const auto& zi = Z.points[static_cast<std::size_t>(i)];
            diffs.push_back({zj[0] - zi[0], zj[1] - zi[1]});
        }
        return kernels::grid_max_planar(diffs, resolution, exec).score;
    }
    if (Z.n == 3) {
        std::vector<std::array<double, 3>> diffs;
        const auto& zj = Z.points[static_cast<std::size_t>(node_index)];
        for (int i = 0; i < Z.size(); ++i) {
            if (i == node_index) continue;
            const auto& zi = Z.points[static_cast<std::size_t>(i)];
            diffs.push_back({zj[0] - zi[0], zj[1] - zi[1], zj[2] - zi[2]});
        }
        return kernels::grid_max_sphere(diffs, resolution, exec).score;
    }
    throw ContractError("grid_rho: only n in {1, 2, 3} is supported");
}

} // namespace vstab::oracle
