#pragma once

#include "vstab/geometry.hpp"
#include "vstab/linalg.hpp"
#include "vstab/multiindex.hpp"
#include "vstab/multivariate.hpp"

#include <cstdint>
#include <vector>

// The monomial Vandermonde matrix V at degree N, its explicit right
// inverse (columns are the Q_j coefficient vectors), and certificates
// pairing every stability inequality with the independently computed
// actual quantity: row distances, row angles, singular values, condition
// number, and right-inverse norms.

namespace vstab {

struct VandermondeSystem {
    NodeSet Z;
    int degree = 0;
    MonomialOrder order;
    linalg::DenseMatrix V; // s x nu, V[i][k] = z_i^alpha_k
};

VandermondeSystem build(const NodeSet& Z, int N,
                        kernels::Exec exec = kernels::Exec::Parallel);

// nu x s matrix with column j the coefficient vector of Q_j.
linalg::DenseMatrix right_inverse(const VandermondeSystem& sys,
                                  const std::vector<DirectionCertificate>& certs);

struct RowDistanceRecord {
    double dist_actual = 0.0;       // exact Gram projector
    double dist_lower_via_cj = 0.0; // 1 / ||c_j||_2
    double dist_bound = 0.0;        // delta^(s-1) / ((4n)^(s-1) s sqrt(nu))
    bool pass = false;              // dist_bound <= lower <= actual, relative slack
};

RowDistanceRecord row_distance_certificate(const VandermondeSystem& sys, int node_index,
                                           const DirectionCertificate& cert,
                                           double rel_slack = 1e-9);

struct RowAngleRecord {
    double sin_actual = 0.0;
    double sin_bound = 0.0; // delta^(s-1) / ((4n)^(s-1) s nu)
    double row_norm = 0.0;  // must be <= sqrt(nu)
    bool pass = false;
};

RowAngleRecord row_angle(const VandermondeSystem& sys, int node_index,
                         const DirectionCertificate& cert, double rel_slack = 1e-9);

struct SpectralRecord {
    double sigma_min = 0.0;
    double sigma_min_bound = 0.0; // kappa^(s-1) / ((4n)^(s-1) s sqrt(s nu))
    double sigma_max = 0.0;
    double sigma_max_bound = 0.0; // sqrt(s nu)
    double cond = 0.0;
    double cond_bound = 0.0;      // s^2 nu (4n/kappa)^(s-1)
    int rank = 0;
    bool pass = false;            // includes rank == s
};

SpectralRecord spectral_certificate(const VandermondeSystem& sys, double kappa_hat,
                                    double rel_slack = 1e-9);

struct RinvRelationRecord {
    double sigma_min = 0.0;
    double rinv_norm = 0.0;
    bool pass = false; // sigma_min >= 1/||V+|| - 1e-9
};

RinvRelationRecord right_inverse_sigma_relation(const VandermondeSystem& sys,
                                                const linalg::DenseMatrix& v_plus,
                                                double abs_slack = 1e-9);

struct NodeRecord {
    int j = 0;           // 1-based in reports
    double delta = 0.0;  // certified gap
    bool exact = false;
    double qj_norm = 0.0;
    double qj_bound = 0.0;       // sharp form (2n/delta)^(s-1)
    double qj_bound_lemma = 0.0; // s (4n/delta)^(s-1)
    double kron_residual = 0.0;  // max_i |Q_j(z_i) - delta_ij|
    double dist_actual = 0.0;
    double dist_lower_via_cj = 0.0;
    double dist_bound = 0.0;
    double sin_theta_actual = 0.0;
    double sin_theta_bound = 0.0;
    double row_norm = 0.0;
    bool pass = false;

    bool operator==(const NodeRecord&) const = default;
};

struct GlobalRecord {
    int s = 0;
    int n = 0;
    int degree = 0;
    std::uint64_t nu = 0;
    double kappa_hat = 0.0;
    double sigma_min_actual = 0.0;
    double sigma_min_bound = 0.0;
    double sigma_max_actual = 0.0;
    double sigma_max_bound = 0.0;
    double rinv_norm_actual = 0.0;
    double rinv_norm_bound = 0.0;
    double pinv_norm = 0.0; // 1 / sigma_min, for comparison with the explicit inverse
    double rinv_identity_residual = 0.0; // ||V V+ - I||_max
    double cond_actual = 0.0;
    double cond_bound = 0.0;
    int rank = 0;
    int full_rank_expected = 0;
    std::uint64_t kernel_dim = 0;
    std::uint64_t kernel_dim_expected = 0;
    double max_kron_residual = 0.0;
    bool pass = false;

    bool operator==(const GlobalRecord&) const = default;
};

struct StabilityReport {
    std::vector<NodeRecord> per_node;
    GlobalRecord global;
    bool all_pass = false;

    bool operator==(const StabilityReport&) const = default;
};

struct AnalyzeOptions {
    SearchConfig search;
    double rel_slack = 1e-9;
    double kron_tol = 1e-8;
    std::uint64_t max_nu = 5000;
    // desk-scale guardrails, overridable
    int max_s = 8;
    int max_n = 4;
    int max_degree = 16;
};

// Full pipeline: geometry, construction, and every certificate.
// degree < 0 selects N = s - 1. Deterministic for fixed (Z, N, options).
StabilityReport analyze(const NodeSet& Z, int degree, const AnalyzeOptions& options = {});

} // namespace vstab
