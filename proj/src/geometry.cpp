#include "vstab/geometry.hpp"

#include "vstab/errors.hpp"
#include "vstab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

namespace vstab {

namespace {

constexpr double kNormSlack = 1e-12;

std::vector<std::vector<double>> difference_vectors(const NodeSet& Z, int j) {
    std::vector<std::vector<double>> diffs;
    diffs.reserve(static_cast<std::size_t>(Z.size()) - 1);
    const auto& zj = Z.points[static_cast<std::size_t>(j)];
    for (int i = 0; i < Z.size(); ++i) {
        if (i == j) continue;
        std::vector<double> u(zj.size());
        for (std::size_t l = 0; l < zj.size(); ++l)
            u[l] = zj[l] - Z.points[static_cast<std::size_t>(i)][l];
        diffs.push_back(std::move(u));
    }
    return diffs;
}

void check_node_index(const NodeSet& Z, int j, const char* where) {
    if (j < 0 || j >= Z.size())
        throw ContractError(std::string(where) + ": node index out of range");
}

double norm_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double c : v) acc += c * c;
    return std::sqrt(acc);
}

} // namespace

NodeSet NodeSet::create(int n, std::vector<std::vector<double>> pts) {
    if (n < 1) throw ValidationError("node set: ambient dimension must be >= 1");
    std::string problems;
    auto complain = [&](const std::string& msg) {
        if (!problems.empty()) problems += "; ";
        problems += msg;
    };
    if (pts.size() < 2) complain("node set: needs at least 2 points, got " + std::to_string(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (static_cast<int>(pts[i].size()) != n) {
            complain("point " + std::to_string(i) + ": expected " + std::to_string(n) +
                     " coordinates, got " + std::to_string(pts[i].size()));
            continue;
        }
        for (double c : pts[i])
            if (!std::isfinite(c)) complain("point " + std::to_string(i) + ": non-finite coordinate");
        if (norm_of(pts[i]) > 1.0 + kNormSlack)
            complain("point " + std::to_string(i) + ": norm exceeds 1 + 1e-12");
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = i + 1; k < pts.size(); ++k)
            if (pts[i] == pts[k])
                complain("points " + std::to_string(i) + " and " + std::to_string(k) + " are duplicates");
    if (!problems.empty()) throw ValidationError(problems);
    NodeSet Z;
    Z.n = n;
    Z.points = std::move(pts);
    return Z;
}

double projection_gap(const NodeSet& Z, int node_index, const std::vector<double>& v) {
    check_node_index(Z, node_index, "projection_gap");
    if (static_cast<int>(v.size()) != Z.n)
        throw ContractError("projection_gap: direction dimension mismatch");
    return kernels::min_abs_projection(v, difference_vectors(Z, node_index));
}

DirectionCertificate exact_rho_planar(const NodeSet& Z, int node_index) {
    if (Z.n != 2) throw ContractError("exact_rho_planar: requires n = 2");
    check_node_index(Z, node_index, "exact_rho_planar");

    auto diffs = difference_vectors(Z, node_index);
    const std::size_t m = diffs.size();

    // f(theta) = min_i r_i |cos(theta - phi_i)|. Any local maximum of the
    // lower envelope sits either at a per-constraint peak theta = phi_i or
    // at a crossing r_i cos(theta - phi_i) = +- r_k cos(theta - phi_k),
    // which reduces to A cos(theta) + B sin(theta) = 0.
    std::vector<double> candidates;
    candidates.reserve(2 * m * m + m);
    const double pi = 3.14159265358979323846264338327950288;
    auto fold = [&](double theta) {
        theta = std::fmod(theta, pi);
        if (theta < 0.0) theta += pi;
        return theta;
    };
    for (const auto& u : diffs) candidates.push_back(fold(std::atan2(u[1], u[0])));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = i + 1; k < m; ++k) {
            for (double sign : {1.0, -1.0}) {
                double A = diffs[i][0] - sign * diffs[k][0];
                double B = diffs[i][1] - sign * diffs[k][1];
                if (A == 0.0 && B == 0.0) continue;
                candidates.push_back(fold(std::atan2(-A, B)));
            }
        }
    }

    double best_score = -1.0;
    double best_theta = 0.0;
    for (double theta : candidates) {
        std::vector<double> v{std::cos(theta), std::sin(theta)};
        double score = kernels::min_abs_projection(v, diffs);
        if (score > best_score) {
            best_score = score;
            best_theta = theta;
        }
    }

    DirectionCertificate cert;
    cert.v = {std::cos(best_theta), std::sin(best_theta)};
    cert.delta = best_score;
    cert.exact = true;
    if (!(cert.delta > 0.0))
        throw InternalError("exact_rho_planar: zero separation on distinct nodes");
    return cert;
}

DirectionCertificate search_lower_bound(const NodeSet& Z, int node_index,
                                        const SearchConfig& config) {
    check_node_index(Z, node_index, "search_lower_bound");
    auto diffs = difference_vectors(Z, node_index);

    // starts: normalized pairwise differences from node j, then the seeded
    // random directions in stream order so a larger budget extends the list.
    std::vector<std::vector<double>> starts;
    starts.reserve(diffs.size() + config.random_candidates);
    for (const auto& u : diffs) {
        double norm = norm_of(u);
        std::vector<double> v(u);
        for (double& c : v) c /= norm;
        starts.push_back(std::move(v));
    }
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(node_index)));
    for (std::size_t r = 0; r < config.random_candidates; ++r)
        starts.push_back(rng.unit_vector(Z.n));

    kernels::AscentParams params{config.ascent_iterations, config.initial_step,
                                 config.min_step};
    auto scored = kernels::ascend_directions(starts, diffs, params, config.exec);
    std::size_t best = kernels::argmax_score(scored);

    DirectionCertificate cert;
    cert.v = scored[best].v;
    cert.delta = scored[best].score;
    cert.exact = false;
    if (!(cert.delta > 0.0))
        throw InternalError("search_lower_bound: zero separation on distinct nodes");
    return cert;
}

DirectionCertificate projection_separation(const NodeSet& Z, int node_index,
                                           const SearchConfig& config) {
    check_node_index(Z, node_index, "projection_separation");

    if (Z.n == 1) {
        double gap = std::numeric_limits<double>::infinity();
        const double zj = Z.points[static_cast<std::size_t>(node_index)][0];
        for (int i = 0; i < Z.size(); ++i) {
            if (i == node_index) continue;
            gap = std::fmin(gap, std::fabs(zj - Z.points[static_cast<std::size_t>(i)][0]));
        }
        return {{1.0}, gap, true};
    }
    if (Z.size() == 2) {
        int other = node_index == 0 ? 1 : 0;
        std::vector<double> u(static_cast<std::size_t>(Z.n));
        for (int l = 0; l < Z.n; ++l)
            u[static_cast<std::size_t>(l)] =
                Z.points[static_cast<std::size_t>(node_index)][static_cast<std::size_t>(l)] -
                Z.points[static_cast<std::size_t>(other)][static_cast<std::size_t>(l)];
        double norm = norm_of(u);
        for (double& c : u) c /= norm;
        return {std::move(u), norm, true};
    }
    if (Z.n == 2) return exact_rho_planar(Z, node_index);
    return search_lower_bound(Z, node_index, config);
}

KappaResult kappa_lower_bound(const NodeSet& Z, const SearchConfig& config) {
    KappaResult result;
    result.certificates.resize(static_cast<std::size_t>(Z.size()));
    const std::ptrdiff_t s = Z.size();
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(s));
    auto run_one = [&](std::ptrdiff_t j) {
        try {
            result.certificates[static_cast<std::size_t>(j)] =
                projection_separation(Z, static_cast<int>(j), config);
        } catch (...) {
            errors[static_cast<std::size_t>(j)] = std::current_exception();
        }
    };
    if (config.exec == kernels::Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < s; ++j) run_one(j);
    } else {
        for (std::ptrdiff_t j = 0; j < s; ++j) run_one(j);
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    result.kappa_hat = std::numeric_limits<double>::infinity();
    for (const auto& cert : result.certificates)
        result.kappa_hat = std::fmin(result.kappa_hat, cert.delta);
    return result;
}

} // namespace vstab
