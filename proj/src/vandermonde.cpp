#include "vstab/vandermonde.hpp"

#include "vstab/dd.hpp"
#include "vstab/errors.hpp"

#include <cmath>
#include <exception>
#include <string>

namespace vstab {

using detail::dd;

namespace {

bool within_upper(double actual, double bound, double rel_slack) {
    return actual <= bound * (1.0 + rel_slack);
}

bool within_lower(double actual, double bound, double rel_slack) {
    return actual >= bound * (1.0 - rel_slack);
}

std::vector<double> row_of(const linalg::DenseMatrix& M, std::size_t i) {
    return std::vector<double>(M.entries.begin() + static_cast<std::ptrdiff_t>(i * M.cols),
                               M.entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * M.cols));
}

std::vector<std::vector<double>> other_rows(const linalg::DenseMatrix& M, std::size_t skip) {
    std::vector<std::vector<double>> rows;
    rows.reserve(M.rows - 1);
    for (std::size_t i = 0; i < M.rows; ++i)
        if (i != skip) rows.push_back(row_of(M, i));
    return rows;
}

double dist_bound_from(const VandermondeSystem& sys, double delta) {
    const double s = static_cast<double>(sys.Z.size());
    const double nu = static_cast<double>(sys.order.size());
    const double n = static_cast<double>(sys.Z.n);
    return std::pow(delta / (4.0 * n), s - 1.0) / (s * std::sqrt(nu));
}

void require_degree(const VandermondeSystem& sys, const char* where) {
    if (sys.degree < sys.Z.size() - 1)
        throw ContractError(std::string(where) + ": degree below s - 1");
}

} // namespace

VandermondeSystem build(const NodeSet& Z, int N, kernels::Exec exec) {
    if (N < 0) throw ContractError("build: degree must be >= 0");
    MonomialOrder order(Z.n, N);
    linalg::DenseMatrix V = kernels::monomial_rows(Z.points, order, exec);
    return VandermondeSystem{Z, N, std::move(order), std::move(V)};
}

linalg::DenseMatrix right_inverse(const VandermondeSystem& sys,
                                  const std::vector<DirectionCertificate>& certs) {
    require_degree(sys, "right_inverse");
    const int s = sys.Z.size();
    if (static_cast<int>(certs.size()) != s)
        throw ContractError("right_inverse: one certificate per node required");
    linalg::DenseMatrix v_plus(sys.order.size(), static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        MultivariatePolynomial qj =
            lagrange_polynomial(sys.Z, j, certs[static_cast<std::size_t>(j)], sys.degree);
        for (std::size_t k = 0; k < sys.order.size(); ++k)
            v_plus(k, static_cast<std::size_t>(j)) = qj.coeffs.coeffs[k];
    }
    return v_plus;
}

namespace {

RowDistanceRecord row_distance_from_coeffs(const VandermondeSystem& sys, int node_index,
                                           const DirectionCertificate& cert,
                                           const std::vector<double>& cj,
                                           double rel_slack) {
    RowDistanceRecord rec;
    rec.dist_actual = linalg::distance_to_span(row_of(sys.V, static_cast<std::size_t>(node_index)),
                                               other_rows(sys.V, static_cast<std::size_t>(node_index)));
    rec.dist_lower_via_cj = 1.0 / linalg::norm2(cj);
    rec.dist_bound = dist_bound_from(sys, cert.delta);
    rec.pass = within_upper(rec.dist_bound, rec.dist_lower_via_cj, rel_slack) &&
               within_upper(rec.dist_lower_via_cj, rec.dist_actual, rel_slack);
    return rec;
}

} // namespace

RowDistanceRecord row_distance_certificate(const VandermondeSystem& sys, int node_index,
                                           const DirectionCertificate& cert,
                                           double rel_slack) {
    require_degree(sys, "row_distance_certificate");
    MultivariatePolynomial qj = lagrange_polynomial(sys.Z, node_index, cert, sys.degree);
    return row_distance_from_coeffs(sys, node_index, cert, qj.coeffs.coeffs, rel_slack);
}

RowAngleRecord row_angle(const VandermondeSystem& sys, int node_index,
                         const DirectionCertificate& cert, double rel_slack) {
    require_degree(sys, "row_angle");
    const double nu = static_cast<double>(sys.order.size());
    RowAngleRecord rec;
    std::vector<double> row = row_of(sys.V, static_cast<std::size_t>(node_index));
    rec.row_norm = linalg::norm2(row);
    if (!(rec.row_norm > 0.0))
        throw InternalError("row_angle: zero Vandermonde row");
    double dist = linalg::distance_to_span(row, other_rows(sys.V, static_cast<std::size_t>(node_index)));
    rec.sin_actual = dist / rec.row_norm;
    rec.sin_bound = dist_bound_from(sys, cert.delta) / std::sqrt(nu);
    rec.pass = within_upper(rec.sin_bound, rec.sin_actual, rel_slack) &&
               within_upper(rec.row_norm, std::sqrt(nu), rel_slack);
    return rec;
}

SpectralRecord spectral_certificate(const VandermondeSystem& sys, double kappa_hat,
                                    double rel_slack) {
    require_degree(sys, "spectral_certificate");
    if (!(kappa_hat > 0.0))
        throw ContractError("spectral_certificate: kappa_hat must be positive");
    const double s = static_cast<double>(sys.Z.size());
    const double nu = static_cast<double>(sys.order.size());
    const double n = static_cast<double>(sys.Z.n);

    SpectralRecord rec;
    std::vector<double> sigma = linalg::singular_values(sys.V);
    rec.sigma_max = sigma.front();
    rec.sigma_min = sigma.back();
    rec.sigma_min_bound =
        std::pow(kappa_hat / (4.0 * n), s - 1.0) / (s * std::sqrt(s * nu));
    rec.sigma_max_bound = std::sqrt(s * nu);
    rec.cond = rec.sigma_max / rec.sigma_min;
    rec.cond_bound = s * s * nu * std::pow(4.0 * n / kappa_hat, s - 1.0);
    rec.rank = linalg::rank_estimate(sys.V);
    rec.pass = within_lower(rec.sigma_min, rec.sigma_min_bound, rel_slack) &&
               within_upper(rec.sigma_max, rec.sigma_max_bound, rel_slack) &&
               within_upper(rec.cond, rec.cond_bound, rel_slack) &&
               rec.rank == sys.Z.size();
    return rec;
}

RinvRelationRecord right_inverse_sigma_relation(const VandermondeSystem& sys,
                                                const linalg::DenseMatrix& v_plus,
                                                double abs_slack) {
    RinvRelationRecord rec;
    rec.sigma_min = linalg::singular_values(sys.V).back();
    rec.rinv_norm = linalg::singular_values(v_plus).front();
    rec.pass = rec.sigma_min >= 1.0 / rec.rinv_norm - abs_slack;
    return rec;
}

StabilityReport analyze(const NodeSet& Z, int degree, const AnalyzeOptions& options) {
    const int s = Z.size();
    if (s > options.max_s)
        throw ValidationError("analyze: s = " + std::to_string(s) +
                              " exceeds the guardrail max_s = " + std::to_string(options.max_s));
    if (Z.n > options.max_n)
        throw ValidationError("analyze: n = " + std::to_string(Z.n) +
                              " exceeds the guardrail max_n = " + std::to_string(options.max_n));
    const int N = degree < 0 ? s - 1 : degree;
    if (N < s - 1)
        throw ValidationError("analyze: degree " + std::to_string(N) +
                              " is below s - 1 = " + std::to_string(s - 1));
    if (N > options.max_degree)
        throw ValidationError("analyze: degree " + std::to_string(N) +
                              " exceeds the guardrail max_degree = " +
                              std::to_string(options.max_degree));
    std::uint64_t nu = dimension(Z.n, N);
    if (nu > options.max_nu)
        throw ValidationError("analyze: basis size " + std::to_string(nu) +
                              " exceeds max_nu = " + std::to_string(options.max_nu));

    KappaResult kappa = kappa_lower_bound(Z, options.search);
    VandermondeSystem sys = build(Z, N, options.search.exec);

    StabilityReport report;
    report.per_node.resize(static_cast<std::size_t>(s));
    linalg::DenseMatrix v_plus(sys.order.size(), static_cast<std::size_t>(s));

    const double nd = static_cast<double>(Z.n);
    const double sd = static_cast<double>(s);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(s));

    auto run_node = [&](int j) {
        try {
            const DirectionCertificate& cert = kappa.certificates[static_cast<std::size_t>(j)];
            MultivariatePolynomial qj = lagrange_polynomial(Z, j, cert, N);

            NodeRecord rec;
            rec.j = j + 1;
            rec.delta = cert.delta;
            rec.exact = cert.exact;
            rec.qj_norm = qj.max_norm();
            rec.qj_bound = std::pow(2.0 * nd / cert.delta, sd - 1.0);
            rec.qj_bound_lemma = sd * std::pow(4.0 * nd / cert.delta, sd - 1.0);

            double kron = 0.0;
            for (int i = 0; i < s; ++i) {
                double value = evaluate(qj, Z.points[static_cast<std::size_t>(i)]);
                double target = i == j ? 1.0 : 0.0;
                kron = std::fmax(kron, std::fabs(value - target));
            }
            rec.kron_residual = kron;

            RowDistanceRecord dist =
                row_distance_from_coeffs(sys, j, cert, qj.coeffs.coeffs, options.rel_slack);
            rec.dist_actual = dist.dist_actual;
            rec.dist_lower_via_cj = dist.dist_lower_via_cj;
            rec.dist_bound = dist.dist_bound;

            RowAngleRecord angle = row_angle(sys, j, cert, options.rel_slack);
            rec.sin_theta_actual = angle.sin_actual;
            rec.sin_theta_bound = angle.sin_bound;
            rec.row_norm = angle.row_norm;

            rec.pass = within_upper(rec.qj_norm, rec.qj_bound, options.rel_slack) &&
                       within_upper(rec.qj_norm, rec.qj_bound_lemma, options.rel_slack) &&
                       rec.kron_residual <= options.kron_tol &&
                       dist.pass && angle.pass;
            report.per_node[static_cast<std::size_t>(j)] = rec;

            for (std::size_t k = 0; k < sys.order.size(); ++k)
                v_plus(k, static_cast<std::size_t>(j)) = qj.coeffs.coeffs[k];
        } catch (...) {
            errors[static_cast<std::size_t>(j)] = std::current_exception();
        }
    };

    if (options.search.exec == kernels::Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int j = 0; j < s; ++j) run_node(j);
    } else {
        for (int j = 0; j < s; ++j) run_node(j);
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    GlobalRecord& g = report.global;
    g.s = s;
    g.n = Z.n;
    g.degree = N;
    g.nu = nu;
    g.kappa_hat = kappa.kappa_hat;

    SpectralRecord spectral = spectral_certificate(sys, kappa.kappa_hat, options.rel_slack);
    g.sigma_min_actual = spectral.sigma_min;
    g.sigma_min_bound = spectral.sigma_min_bound;
    g.sigma_max_actual = spectral.sigma_max;
    g.sigma_max_bound = spectral.sigma_max_bound;
    g.cond_actual = spectral.cond;
    g.cond_bound = spectral.cond_bound;
    g.rank = spectral.rank;
    g.full_rank_expected = s;
    g.kernel_dim = nu - static_cast<std::uint64_t>(spectral.rank);
    g.kernel_dim_expected = nu - static_cast<std::uint64_t>(s);

    // ||V V+ - I||_max, compensated dot products
    double identity_residual = 0.0;
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            dd acc;
            for (std::size_t k = 0; k < sys.order.size(); ++k)
                acc += detail::two_prod(sys.V(static_cast<std::size_t>(i), k),
                                        v_plus(k, static_cast<std::size_t>(j)));
            double target = i == j ? 1.0 : 0.0;
            identity_residual =
                std::fmax(identity_residual, std::fabs(detail::to_double(acc) - target));
        }
    }
    g.rinv_identity_residual = identity_residual;

    g.rinv_norm_actual = linalg::singular_values(v_plus).front();
    g.rinv_norm_bound = std::pow(sd, 1.5) * std::sqrt(static_cast<double>(nu)) *
                        std::pow(4.0 * nd / kappa.kappa_hat, sd - 1.0);
    g.pinv_norm = 1.0 / spectral.sigma_min;

    double max_kron = 0.0;
    bool nodes_pass = true;
    for (const auto& rec : report.per_node) {
        max_kron = std::fmax(max_kron, rec.kron_residual);
        nodes_pass = nodes_pass && rec.pass;
    }
    g.max_kron_residual = max_kron;

    bool rinv_relation_pass = spectral.sigma_min >= 1.0 / g.rinv_norm_actual - 1e-9;
    g.pass = spectral.pass && rinv_relation_pass &&
             identity_residual <= options.kron_tol &&
             within_upper(g.rinv_norm_actual, g.rinv_norm_bound, options.rel_slack) &&
             g.kernel_dim == g.kernel_dim_expected;

    report.all_pass = nodes_pass && g.pass;
    return report;
}

} // namespace vstab
