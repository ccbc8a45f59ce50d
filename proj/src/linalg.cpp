#include "vstab/linalg.hpp"

#include "vstab/dd.hpp"
#include "vstab/errors.hpp"
#include "vstab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace vstab::linalg {

using detail::dd;

namespace {

constexpr std::size_t kDeskLimit = 64;
constexpr double kPublicOffTol = 1e-12;
// The engine keeps sweeping well past the public tolerance; quadratic
// convergence makes the extra sweeps cheap and leaves eigenvalues accurate
// at double-double level, which the equality-tight certificates need.
constexpr double kEngineOffTol = 1e-28;
constexpr int kMaxSweeps = 100;

double frobenius(const std::vector<dd>& A, std::size_t m) {
    dd acc;
    for (std::size_t i = 0; i < m * m; ++i) acc += A[i] * A[i];
    return std::sqrt(detail::to_double(acc));
}

double off_diagonal_frobenius(const std::vector<dd>& A, std::size_t m) {
    dd acc;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) acc += A[i * m + j] * A[i * m + j];
    return std::sqrt(detail::to_double(acc));
}

struct JacobiOutput {
    std::vector<dd> eigenvalues; // descending
    DenseMatrix eigenvectors;
};

// Row-cyclic Jacobi on a symmetric dd matrix. Rotation parameters are
// computed in dd as well so each applied transform is orthogonal to
// ~1e-32, keeping absolute eigenvalue error near eps^2 * ||A||.
JacobiOutput jacobi_engine(std::vector<dd> A, std::size_t m) {
    DenseMatrix Q(m, m);
    for (std::size_t i = 0; i < m; ++i) Q(i, i) = 1.0;

    const double scale = frobenius(A, m);
    if (scale > 0.0) {
        int sweep = 0;
        for (; sweep < kMaxSweeps; ++sweep) {
            if (off_diagonal_frobenius(A, m) <= kEngineOffTol * scale) break;
            for (std::size_t p = 0; p + 1 < m; ++p) {
                for (std::size_t q = p + 1; q < m; ++q) {
                    dd apq = A[p * m + q];
                    if (std::fabs(apq.hi) == 0.0 && std::fabs(apq.lo) == 0.0) continue;
                    dd app = A[p * m + p];
                    dd aqq = A[q * m + q];
                    dd theta = (aqq - app) / (apq * 2.0);
                    dd t;
                    double th = theta.hi;
                    if (std::fabs(th) > 1e150) {
                        t = dd(1.0) / (theta * 2.0); // asymptotic branch
                    } else {
                        dd root = detail::sqrt(theta * theta + 1.0);
                        dd denom = detail::abs(theta) + root;
                        t = dd(1.0) / denom;
                        if (th < 0.0) t = -t;
                    }
                    dd c = dd(1.0) / detail::sqrt(t * t + 1.0);
                    dd s = t * c;
                    dd tau = s / (c + 1.0);

                    A[p * m + p] = app - t * apq;
                    A[q * m + q] = aqq + t * apq;
                    A[p * m + q] = dd(0.0);
                    A[q * m + p] = dd(0.0);
                    for (std::size_t r = 0; r < m; ++r) {
                        if (r == p || r == q) continue;
                        dd arp = A[r * m + p];
                        dd arq = A[r * m + q];
                        dd new_rp = arp - s * (arq + tau * arp);
                        dd new_rq = arq + s * (arp - tau * arq);
                        A[r * m + p] = new_rp;
                        A[p * m + r] = new_rp;
                        A[r * m + q] = new_rq;
                        A[q * m + r] = new_rq;
                    }
                    const double ch = detail::to_double(c);
                    const double sh = detail::to_double(s);
                    for (std::size_t r = 0; r < m; ++r) {
                        double qrp = Q(r, p);
                        double qrq = Q(r, q);
                        Q(r, p) = ch * qrp - sh * qrq;
                        Q(r, q) = sh * qrp + ch * qrq;
                    }
                }
            }
        }
        if (off_diagonal_frobenius(A, m) > kPublicOffTol * scale)
            throw ConvergenceError("jacobi_eigh: off-diagonal norm above tolerance after " +
                                   std::to_string(kMaxSweeps) + " sweeps");
    }

    JacobiOutput out;
    out.eigenvalues.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.eigenvalues[i] = A[i * m + i];

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return out.eigenvalues[b] < out.eigenvalues[a];
    });

    JacobiOutput sorted;
    sorted.eigenvalues.resize(m);
    sorted.eigenvectors = DenseMatrix(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        sorted.eigenvalues[k] = out.eigenvalues[perm[k]];
        for (std::size_t r = 0; r < m; ++r) sorted.eigenvectors(r, k) = Q(r, perm[k]);
    }
    return sorted;
}

std::vector<dd> to_dd_symmetric(const DenseMatrix& S) {
    if (S.rows != S.cols) throw ContractError("jacobi_eigh: matrix must be square");
    if (S.rows > kDeskLimit) throw ContractError("jacobi_eigh: size above desk-scale limit 64");
    const std::size_t m = S.rows;
    double scale = 0.0;
    for (double e : S.entries) scale += e * e;
    scale = std::sqrt(scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            worst = std::fmax(worst, std::fabs(S(i, j) - S(j, i)));
    if (worst > 1e-12 * std::fmax(scale, 1.0))
        throw ContractError("jacobi_eigh: input is not symmetric");
    std::vector<dd> A(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) A[i * m + j] = dd(S(i, j));
    // enforce exact symmetry on the working copy
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) A[j * m + i] = A[i * m + j];
    return A;
}

} // namespace

EighResult jacobi_eigh(const DenseMatrix& S) {
    auto A = to_dd_symmetric(S);
    auto out = jacobi_engine(std::move(A), S.rows);
    EighResult result;
    result.eigenvalues.resize(S.rows);
    for (std::size_t i = 0; i < S.rows; ++i)
        result.eigenvalues[i] = detail::to_double(out.eigenvalues[i]);
    result.eigenvectors = std::move(out.eigenvectors);
    return result;
}

std::vector<double> singular_values(const DenseMatrix& M) {
    const std::size_t small = std::min(M.rows, M.cols);
    if (small == 0) return {};
    if (small > kDeskLimit)
        throw ContractError("singular_values: min(rows, cols) above desk-scale limit 64");

    // Gram of the shorter side, compensated entries.
    DenseMatrix W;
    if (M.rows <= M.cols) {
        W = M;
    } else {
        W = DenseMatrix(M.cols, M.rows);
        for (std::size_t i = 0; i < M.rows; ++i)
            for (std::size_t j = 0; j < M.cols; ++j) W(j, i) = M(i, j);
    }
    std::vector<dd> G = kernels::row_gram(W, kernels::Exec::Serial);
    auto out = jacobi_engine(std::move(G), small);

    std::vector<double> sigma(small);
    for (std::size_t i = 0; i < small; ++i) {
        dd lambda = out.eigenvalues[i];
        if (lambda.hi < 0.0) lambda = dd(0.0);
        sigma[i] = detail::to_double(detail::sqrt(lambda));
    }
    return sigma;
}

double norm2(const std::vector<double>& x) {
    return std::sqrt(detail::to_double(detail::norm2_squared(x.data(), x.size())));
}

double distance_to_span(const std::vector<double>& x,
                        const std::vector<std::vector<double>>& B) {
    if (B.empty()) return norm2(x);
    if (B.size() > kDeskLimit)
        throw ContractError("distance_to_span: spanning set above desk-scale limit 64");
    const std::size_t m = B.size();
    const std::size_t dim = x.size();
    for (const auto& b : B)
        if (b.size() != dim) throw ContractError("distance_to_span: dimension mismatch");

    std::vector<dd> G;
    std::vector<dd> rhs;
    kernels::vector_gram(B, x, G, rhs, kernels::Exec::Serial);

    auto eig = jacobi_engine(G, m); // keep G for the refinement residual
    const dd lambda_max = eig.eigenvalues[0];
    const double cutoff = 1e-12 * std::fmax(detail::to_double(lambda_max), 0.0);

    // pseudo-solve on the retained eigenspace
    auto apply_pinv = [&](const std::vector<dd>& r) {
        std::vector<dd> c(m, dd(0.0));
        for (std::size_t k = 0; k < m; ++k) {
            double lambda = detail::to_double(eig.eigenvalues[k]);
            if (!(lambda > cutoff) || lambda <= 0.0) continue;
            dd proj;
            for (std::size_t i = 0; i < m; ++i)
                proj += r[i] * eig.eigenvectors(i, k);
            dd coef = proj / eig.eigenvalues[k];
            for (std::size_t i = 0; i < m; ++i)
                c[i] += coef * dd(eig.eigenvectors(i, k));
        }
        return c;
    };

    std::vector<dd> c = apply_pinv(rhs);
    for (int refine = 0; refine < 3; ++refine) {
        std::vector<dd> resid = rhs;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k)
                resid[i] -= G[i * m + k] * c[k];
        std::vector<dd> delta = apply_pinv(resid);
        for (std::size_t i = 0; i < m; ++i) c[i] += delta[i];
    }

    dd dist2;
    std::vector<double> chi(m), clo(m);
    for (std::size_t i = 0; i < m; ++i) {
        chi[i] = c[i].hi;
        clo[i] = c[i].lo;
    }
    for (std::size_t k = 0; k < dim; ++k) {
        dd r = dd(x[k]);
        for (std::size_t i = 0; i < m; ++i) {
            r -= detail::two_prod(chi[i], B[i][k]);
            r -= detail::two_prod(clo[i], B[i][k]);
        }
        dist2 += r * r;
    }
    return detail::to_double(detail::sqrt(dist2));
}

int rank_estimate(const DenseMatrix& M, double tol_rel) {
    std::vector<double> sigma = singular_values(M);
    if (sigma.empty() || sigma[0] <= 0.0) return 0;
    int rank = 0;
    for (double s : sigma)
        if (s > tol_rel * sigma[0]) ++rank;
    return rank;
}

double sigma_min_from_column_distances(const DenseMatrix& M) {
    const std::size_t m = M.cols;
    if (m == 0) throw ContractError("sigma_min_from_column_distances: empty matrix");
    std::vector<std::vector<double>> columns(m, std::vector<double>(M.rows));
    for (std::size_t i = 0; i < M.rows; ++i)
        for (std::size_t j = 0; j < m; ++j) columns[j][i] = M(i, j);

    double min_dist = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> others;
    others.reserve(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        others.clear();
        for (std::size_t k = 0; k < m; ++k)
            if (k != j) others.push_back(columns[k]);
        min_dist = std::fmin(min_dist, distance_to_span(columns[j], others));
    }
    double bound = min_dist / std::sqrt(static_cast<double>(m));

    std::vector<double> sigma = singular_values(M);
    double sigma_min = sigma.empty() ? 0.0 : sigma.back();
    if (bound > sigma_min + 1e-9)
        throw InternalError("sigma_min_from_column_distances: bound exceeds sigma_min");
    return bound;
}

} // namespace vstab::linalg
