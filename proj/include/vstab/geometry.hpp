#pragma once

#include "vstab/kernels.hpp"

#include <cstdint>
#include <vector>

// Max-min projection separation of a node set: for node j, the best
// achievable worst-case gap |<v, z_j - z_i>| over unit directions v, and
// its minimum kappa over all nodes. Exact in dimension 1 and 2 and for
// two-node sets; a certified lower bound with witness direction otherwise.

namespace vstab {

struct NodeSet {
    int n = 0;
    std::vector<std::vector<double>> points;

    // Validates arity, pairwise distinctness (exact on the stored doubles),
    // s >= 2, and Euclidean norms <= 1 + 1e-12. Throws ValidationError.
    static NodeSet create(int n, std::vector<std::vector<double>> pts);

    int size() const { return static_cast<int>(points.size()); }
};

struct DirectionCertificate {
    std::vector<double> v;  // unit direction
    double delta = 0.0;     // achieved gap min_{i != j} |<v, z_j - z_i>|
    bool exact = false;     // true when produced by a provably exact solver
};

struct SearchConfig {
    std::size_t random_candidates = 1024;
    std::uint64_t seed = 0;
    int ascent_iterations = 64;
    double initial_step = 0.25;
    double min_step = 1e-6;
    kernels::Exec exec = kernels::Exec::Parallel;
};

// The achieved gap of direction v at node j, recomputed from scratch.
double projection_gap(const NodeSet& Z, int node_index, const std::vector<double>& v);

// Certified lower bound on the separation at node j. Exact for n = 1,
// s = 2, and n = 2; candidate search plus coordinate ascent otherwise.
DirectionCertificate projection_separation(const NodeSet& Z, int node_index,
                                           const SearchConfig& config = {});

// Closed-form planar maximizer: evaluates f at every per-constraint peak
// and every pairwise crossing angle. Requires n = 2.
DirectionCertificate exact_rho_planar(const NodeSet& Z, int node_index);

// The general candidate-plus-ascent search (any n); the value returned
// never decreases when random_candidates grows under the same seed.
DirectionCertificate search_lower_bound(const NodeSet& Z, int node_index,
                                        const SearchConfig& config);

struct KappaResult {
    double kappa_hat = 0.0;
    std::vector<DirectionCertificate> certificates;
};

// min_j delta_j with one certificate per node.
KappaResult kappa_lower_bound(const NodeSet& Z, const SearchConfig& config = {});

} // namespace vstab
