#include "vstab/kernels.hpp"

#include "vstab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace vstab::kernels {

using detail::dd;

double min_abs_projection(const std::vector<double>& v,
                          const std::vector<std::vector<double>>& diffs) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = v.size();
    for (const auto& u : diffs) {
        double dot = 0.0;
        for (std::size_t l = 0; l < n; ++l) dot += v[l] * u[l];
        double a = std::fabs(dot);
        if (a < best) best = a;
    }
    return best;
}

namespace {

void normalize(std::vector<double>& v) {
    double norm2 = 0.0;
    for (double c : v) norm2 += c * c;
    double inv = 1.0 / std::sqrt(norm2);
    for (double& c : v) c *= inv;
}

} // namespace

ScoredDirection ascend_direction(std::vector<double> start,
                                 const std::vector<std::vector<double>>& diffs,
                                 const AscentParams& params) {
    const std::size_t n = start.size();
    double score = min_abs_projection(start, diffs);
    double step = params.initial_step;
    std::vector<double> trial;
    for (int iter = 0; iter < params.iterations && step >= params.min_step; ++iter) {
        double best_trial_score = score;
        std::vector<double> best_trial;
        for (std::size_t l = 0; l < n; ++l) {
            for (double sign : {1.0, -1.0}) {
                trial = start;
                trial[l] += sign * step;
                normalize(trial);
                double s = min_abs_projection(trial, diffs);
                if (s > best_trial_score) {
                    best_trial_score = s;
                    best_trial = trial;
                }
            }
        }
        if (best_trial.empty()) {
            step *= 0.5;
        } else {
            start = std::move(best_trial);
            score = best_trial_score;
        }
    }
    return {score, std::move(start)};
}

std::vector<ScoredDirection> ascend_directions(
    const std::vector<std::vector<double>>& starts,
    const std::vector<std::vector<double>>& diffs,
    const AscentParams& params, Exec exec) {
    std::vector<ScoredDirection> out(starts.size());
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(starts.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] =
                ascend_direction(starts[static_cast<std::size_t>(k)], diffs, params);
    } else {
        for (std::ptrdiff_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] =
                ascend_direction(starts[static_cast<std::size_t>(k)], diffs, params);
    }
    return out;
}

std::size_t argmax_score(const std::vector<ScoredDirection>& scored) {
    if (scored.empty()) throw ContractError("argmax_score: empty candidate list");
    std::size_t best = 0;
    for (std::size_t k = 1; k < scored.size(); ++k)
        if (scored[k].score > scored[best].score) best = k;
    return best;
}

// ---- dense direction grids ----------------------------------------------

namespace {

constexpr std::size_t kGridBlock = 4096;
constexpr double kPi = 3.14159265358979323846264338327950288;

double planar_score(std::size_t k, std::size_t resolution,
                    const std::vector<std::array<double, 2>>& diffs) {
    double theta = kPi * static_cast<double>(k) / static_cast<double>(resolution);
    double c = std::cos(theta);
    double s = std::sin(theta);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : diffs) {
        double a = std::fabs(c * u[0] + s * u[1]);
        if (a < best) best = a;
    }
    return best;
}

double sphere_score(std::size_t k, std::size_t resolution,
                    const std::vector<std::array<double, 3>>& diffs) {
    double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(resolution);
    double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
    // golden-angle azimuth
    double az = 2.0 * kPi * static_cast<double>(k) / 1.61803398874989484820458683436564;
    double x = r * std::cos(az);
    double y = r * std::sin(az);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : diffs) {
        double a = std::fabs(x * u[0] + y * u[1] + z * u[2]);
        if (a < best) best = a;
    }
    return best;
}

// Fixed-size blocks, each reduced serially; block results combined in
// index order afterwards, so the outcome is independent of scheduling.
template <typename ScoreFn>
GridBest blocked_grid_max(std::size_t resolution, Exec exec, ScoreFn&& score) {
    const std::size_t blocks = (resolution + kGridBlock - 1) / kGridBlock;
    std::vector<GridBest> partial(blocks);
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(blocks);

    auto reduce_block = [&](std::size_t b) {
        std::size_t begin = b * kGridBlock;
        std::size_t end = std::min(begin + kGridBlock, resolution);
        GridBest best{-1.0, begin};
        for (std::size_t k = begin; k < end; ++k) {
            double s = score(k);
            if (s > best.score) best = {s, k};
        }
        partial[b] = best;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < count; ++b)
            reduce_block(static_cast<std::size_t>(b));
    } else {
        for (std::ptrdiff_t b = 0; b < count; ++b)
            reduce_block(static_cast<std::size_t>(b));
    }

    GridBest best = partial[0];
    for (std::size_t b = 1; b < blocks; ++b)
        if (partial[b].score > best.score) best = partial[b];
    return best;
}

} // namespace

GridBest grid_max_planar(const std::vector<std::array<double, 2>>& diffs,
                         std::size_t resolution, Exec exec) {
    return blocked_grid_max(resolution, exec,
                            [&](std::size_t k) { return planar_score(k, resolution, diffs); });
}

GridBest grid_max_sphere(const std::vector<std::array<double, 3>>& diffs,
                         std::size_t resolution, Exec exec) {
    return blocked_grid_max(resolution, exec,
                            [&](std::size_t k) { return sphere_score(k, resolution, diffs); });
}

std::vector<double> planar_grid_direction(std::size_t k, std::size_t resolution) {
    double theta = kPi * static_cast<double>(k) / static_cast<double>(resolution);
    return {std::cos(theta), std::sin(theta)};
}

std::vector<double> sphere_grid_direction(std::size_t k, std::size_t resolution) {
    double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(resolution);
    double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
    double az = 2.0 * kPi * static_cast<double>(k) / 1.61803398874989484820458683436564;
    return {r * std::cos(az), r * std::sin(az), z};
}

// ---- dense fills ----------------------------------------------------------

std::vector<dd> row_gram(const linalg::DenseMatrix& M, Exec exec) {
    const std::size_t m = M.rows;
    std::vector<dd> G(m * m);
    // upper triangle as a flat list of (i, j) pairs, i <= j
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(m * (m + 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);

    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(pairs.size());
    auto fill = [&](std::size_t p) {
        auto [i, j] = pairs[p];
        dd v = detail::dot(&M.entries[i * M.cols], &M.entries[j * M.cols], M.cols);
        G[i * m + j] = v;
        G[j * m + i] = v;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t p = 0; p < count; ++p) fill(static_cast<std::size_t>(p));
    } else {
        for (std::ptrdiff_t p = 0; p < count; ++p) fill(static_cast<std::size_t>(p));
    }
    return G;
}

void vector_gram(const std::vector<std::vector<double>>& B,
                 const std::vector<double>& x,
                 std::vector<dd>& G,
                 std::vector<dd>& rhs, Exec exec) {
    const std::size_t m = B.size();
    const std::size_t dim = x.size();
    G.assign(m * m, dd{});
    rhs.assign(m, dd{});

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(m * (m + 1) / 2 + m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);

    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(pairs.size());
    auto fill = [&](std::size_t p) {
        auto [i, j] = pairs[p];
        dd v = detail::dot(B[i].data(), B[j].data(), dim);
        G[i * m + j] = v;
        G[j * m + i] = v;
    };
    auto fill_rhs = [&](std::size_t i) {
        rhs[i] = detail::dot(B[i].data(), x.data(), dim);
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t p = 0; p < count; ++p) fill(static_cast<std::size_t>(p));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i)
            fill_rhs(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t p = 0; p < count; ++p) fill(static_cast<std::size_t>(p));
        for (std::size_t i = 0; i < m; ++i) fill_rhs(i);
    }
}

linalg::DenseMatrix monomial_rows(const std::vector<std::vector<double>>& points,
                                  const MonomialOrder& order, Exec exec) {
    const std::size_t s = points.size();
    const std::size_t nu = order.size();
    const int n = order.n();
    const int N = order.max_degree();
    linalg::DenseMatrix V(s, nu);

    auto fill_row = [&](std::size_t i) {
        // power table: powers[l * (N+1) + d] = z_l^d
        std::vector<double> powers(static_cast<std::size_t>(n) * (N + 1));
        for (int l = 0; l < n; ++l) {
            powers[static_cast<std::size_t>(l) * (N + 1)] = 1.0;
            for (int d = 1; d <= N; ++d)
                powers[static_cast<std::size_t>(l) * (N + 1) + d] =
                    powers[static_cast<std::size_t>(l) * (N + 1) + d - 1] * points[i][static_cast<std::size_t>(l)];
        }
        for (std::size_t k = 0; k < nu; ++k) {
            const auto& alpha = order.at(k).exponents;
            double value = 1.0;
            for (int l = 0; l < n; ++l)
                value *= powers[static_cast<std::size_t>(l) * (N + 1) + alpha[static_cast<std::size_t>(l)]];
            V(i, k) = value;
        }
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(s); ++i)
            fill_row(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < s; ++i) fill_row(i);
    }
    return V;
}

} // namespace vstab::kernels
