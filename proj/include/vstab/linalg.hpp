#pragma once

#include <cstddef>
#include <vector>

// Self-contained dense kernels at desk scale (matrices up to 64 on the
// short side): cyclic Jacobi eigensolver, Gram-based singular values,
// exact distance to a span, and numerical rank. No external numerical
// dependencies; internals accumulate in compensated double-double
// arithmetic so near-degenerate certificate comparisons keep their margin.

namespace vstab::linalg {

struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries; // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), entries(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    bool operator==(const DenseMatrix&) const = default;
};

struct EighResult {
    std::vector<double> eigenvalues; // descending
    DenseMatrix eigenvectors;        // columns match eigenvalues
};

// Row-cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
// below 1e-12 * ||S||_F (or far beyond it; the sweep cap is 100).
// Throws ContractError on non-symmetric input, ConvergenceError if the
// public tolerance is still not met at the cap.
EighResult jacobi_eigh(const DenseMatrix& S);

// Singular values as square roots of the eigenvalues of the smaller Gram
// matrix (M M^T if rows <= cols, else M^T M), descending, clamped at 0.
std::vector<double> singular_values(const DenseMatrix& M);

// Euclidean distance from x to span(B) via an eigen-decomposition
// pseudo-solve of the Gram system, eigenvalue cutoff 1e-12 * lambda_max.
// Empty B gives ||x||_2.
double distance_to_span(const std::vector<double>& x,
                        const std::vector<std::vector<double>>& B);

// Count of singular values above tol_rel * sigma_1 (0 when sigma_1 = 0).
int rank_estimate(const DenseMatrix& M, double tol_rel = 1e-10);

// Lower bound (1/sqrt(m)) * min_j dist(C_j, span of the other columns).
// Cross-checked against the true sigma_min; a violation throws
// InternalError since the inequality is a theorem.
double sigma_min_from_column_distances(const DenseMatrix& M);

double norm2(const std::vector<double>& x);

} // namespace vstab::linalg
