#include "vstab/multiindex.hpp"

#include "vstab/errors.hpp"

#include <string>

namespace vstab {

namespace {

constexpr std::uint64_t kMaxExact = 1ULL << 63;

} // namespace

std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    if (b > a - b) b = a - b;
    // After step i the accumulator equals C(a - b + i, i), so it is always
    // an exact integer and monotonically approaches the result.
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r = r * (a - b + i);
        r /= i;
        if (r >= kMaxExact)
            throw OverflowError("binomial(" + std::to_string(a) + ", " + std::to_string(b) +
                                ") exceeds the exact 63-bit range");
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t dimension(int n, int N) {
    if (n < 1) throw ContractError("dimension: ambient dimension must be >= 1");
    if (N < 0) throw ContractError("dimension: degree must be >= 0");
    return binomial(static_cast<std::uint64_t>(N) + static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(N));
}

std::uint64_t multinomial(int k, const MultiIndex& alpha) {
    if (k < 0) throw ContractError("multinomial: k must be >= 0");
    for (int e : alpha.exponents)
        if (e < 0) throw ContractError("multinomial: negative exponent");
    if (alpha.total_degree() != k)
        throw ContractError("multinomial: |alpha| != k");
    // C(k; alpha) = prod over l of C(partial_sum_l, alpha_l).
    unsigned __int128 r = 1;
    std::uint64_t partial = 0;
    for (int e : alpha.exponents) {
        partial += static_cast<std::uint64_t>(e);
        r *= binomial(partial, static_cast<std::uint64_t>(e));
        if (r >= kMaxExact)
            throw OverflowError("multinomial exceeds the exact 63-bit range");
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

void emit_degree(int n, int degree, std::vector<int>& prefix,
                 std::vector<MultiIndex>& out) {
    if (n == 1) {
        prefix.push_back(degree);
        out.push_back(MultiIndex{prefix});
        prefix.pop_back();
        return;
    }
    for (int e = degree; e >= 0; --e) {
        prefix.push_back(e);
        emit_degree(n - 1, degree - e, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<MultiIndex> enumerate_indices(int n, int N) {
    std::uint64_t nu = dimension(n, N);
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(nu));
    std::vector<int> prefix;
    for (int degree = 0; degree <= N; ++degree)
        emit_degree(n, degree, prefix, out);
    return out;
}

MonomialOrder::MonomialOrder(int n, int N)
    : n_(n), degree_(N), indices_(enumerate_indices(n, N)) {
    for (std::size_t k = 0; k < indices_.size(); ++k)
        lookup_.emplace(indices_[k].exponents, k);
}

std::size_t MonomialOrder::index_of(const MultiIndex& alpha) const {
    auto it = lookup_.find(alpha.exponents);
    if (it == lookup_.end())
        throw ContractError("MonomialOrder::index_of: multi-index not in basis");
    return it->second;
}

} // namespace vstab
