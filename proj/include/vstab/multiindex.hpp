#pragma once

#include <cstdint>
#include <map>
#include <vector>

// Graded monomial basis enumeration and exact combinatorics.
//
// The basis of n-variate polynomials of total degree <= N is indexed by
// exponent vectors alpha ordered by total degree first, then within each
// degree by descending first coordinate, recursively. The order is total,
// deterministic, and shared by every coefficient vector and matrix column
// in the library.

namespace vstab {

struct MultiIndex {
    std::vector<int> exponents;

    int total_degree() const {
        int d = 0;
        for (int e : exponents) d += e;
        return d;
    }
    bool operator==(const MultiIndex& other) const = default;
};

// nu(n, N) = C(N + n, N), the basis size. Exact; throws OverflowError
// once the result (or an intermediate) would pass 2^63.
std::uint64_t dimension(int n, int N);

// C(a, b) by the multiplicative formula with stepwise exact division.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b);

// k! / prod(alpha_l!) with |alpha| = k enforced.
std::uint64_t multinomial(int k, const MultiIndex& alpha);

// All multi-indices with |alpha| <= N in the fixed graded order.
std::vector<MultiIndex> enumerate_indices(int n, int N);

class MonomialOrder {
public:
    MonomialOrder(int n, int N);

    int n() const { return n_; }
    int max_degree() const { return degree_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& at(std::size_t k) const { return indices_[k]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    // Position of alpha in the enumeration; throws ContractError if absent.
    std::size_t index_of(const MultiIndex& alpha) const;

private:
    int n_;
    int degree_;
    std::vector<MultiIndex> indices_;
    std::map<std::vector<int>, std::size_t> lookup_;
};

} // namespace vstab
