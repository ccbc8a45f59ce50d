#pragma once

#include "vstab/dd.hpp"
#include "vstab/linalg.hpp"
#include "vstab/multiindex.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

// Data-parallel inner loops, each with an OpenMP variant and a serial
// reference kept for testing. Work is partitioned so every element (or
// fixed-size block) is computed by exactly one thread with a fixed serial
// instruction sequence, and reductions happen afterwards in index order;
// the two variants therefore return bit-identical results and the output
// does not depend on the thread count.

namespace vstab::kernels {

enum class Exec { Serial, Parallel };

// ---- max-min projection score -------------------------------------------

// f(v) = min_i |<v, u_i>| over the difference vectors u_i.
double min_abs_projection(const std::vector<double>& v,
                          const std::vector<std::vector<double>>& diffs);

struct AscentParams {
    int iterations = 64;
    double initial_step = 0.25;
    double min_step = 1e-6;
};

struct ScoredDirection {
    double score = 0.0;
    std::vector<double> v;
};

// Coordinate-perturbation ascent of f from one unit-vector start.
// Moves only on strict improvement, halving the step otherwise, so the
// returned score is the maximum seen along the trajectory.
ScoredDirection ascend_direction(std::vector<double> start,
                                 const std::vector<std::vector<double>>& diffs,
                                 const AscentParams& params);

// Ascent from every start; out[k] depends only on starts[k].
std::vector<ScoredDirection> ascend_directions(
    const std::vector<std::vector<double>>& starts,
    const std::vector<std::vector<double>>& diffs,
    const AscentParams& params, Exec exec);

// Index of the best score, lowest index on ties.
std::size_t argmax_score(const std::vector<ScoredDirection>& scored);

// ---- dense direction grids ----------------------------------------------

struct GridBest {
    double score = 0.0;
    std::size_t index = 0;
};

// Max of f over the planar half-turn grid theta_k = pi k / resolution.
GridBest grid_max_planar(const std::vector<std::array<double, 2>>& diffs,
                         std::size_t resolution, Exec exec);

// Max of f over a Fibonacci sphere of `resolution` directions.
GridBest grid_max_sphere(const std::vector<std::array<double, 3>>& diffs,
                         std::size_t resolution, Exec exec);

std::vector<double> planar_grid_direction(std::size_t k, std::size_t resolution);
std::vector<double> sphere_grid_direction(std::size_t k, std::size_t resolution);

// ---- dense fills ----------------------------------------------------------

// Gram matrix G[i][j] = <row_i, row_j> of M, compensated entries.
std::vector<detail::dd> row_gram(const linalg::DenseMatrix& M, Exec exec);

// Gram matrix of a vector list plus right-hand side <b_i, x>.
void vector_gram(const std::vector<std::vector<double>>& B,
                 const std::vector<double>& x,
                 std::vector<detail::dd>& G,
                 std::vector<detail::dd>& rhs, Exec exec);

// Monomial evaluation rows: out[i][k] = points[i]^alpha_k via per-coordinate
// power tables.
linalg::DenseMatrix monomial_rows(const std::vector<std::vector<double>>& points,
                                  const MonomialOrder& order, Exec exec);

} // namespace vstab::kernels
