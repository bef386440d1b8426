#include "runmove/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <numeric>

namespace runmove::oracle {

namespace {

void guard(std::uint64_t n) {
    if (n > kOracleLimit)
        throw Error(Errc::too_large, "oracle input of " + std::to_string(n) +
                                         " exceeds the limit of " + std::to_string(kOracleLimit));
}

} // namespace

std::vector<std::uint64_t> naive_sa(std::span<const std::uint8_t> text) {
    guard(text.size());
    const std::uint64_t n = text.size();
    std::vector<std::uint64_t> sa(n);
    std::iota(sa.begin(), sa.end(), 0);
    std::sort(sa.begin(), sa.end(), [&](std::uint64_t a, std::uint64_t b) {
        const std::uint64_t la = n - a, lb = n - b;
        const int c = std::memcmp(text.data() + a, text.data() + b, std::min(la, lb));
        return c != 0 ? c < 0 : la < lb;
    });
    return sa;
}

std::vector<std::uint8_t> naive_bwt(std::span<const std::uint8_t> text,
                                    std::span<const std::uint64_t> sa) {
    const std::uint64_t n = text.size();
    std::vector<std::uint8_t> bwt(n);
    for (std::uint64_t i = 0; i < n; ++i) bwt[i] = text[(sa[i] + n - 1) % n];
    return bwt;
}

NaivePermutation naive_lf(std::span<const std::uint8_t> bwt) {
    guard(bwt.size());
    std::array<std::uint64_t, 256> count{};
    for (std::uint8_t c : bwt) ++count[c];
    std::array<std::uint64_t, 256> first{};
    for (std::size_t c = 1; c < 256; ++c) first[c] = first[c - 1] + count[c - 1];
    std::array<std::uint64_t, 256> seen{};
    NaivePermutation lf(bwt.size());
    for (std::uint64_t i = 0; i < bwt.size(); ++i) lf[i] = first[bwt[i]] + seen[bwt[i]]++;
    return lf;
}

NaivePermutation naive_fl(std::span<const std::uint8_t> bwt) { return inverse(naive_lf(bwt)); }

std::vector<std::uint8_t> naive_invert(std::span<const std::uint8_t> bwt) {
    const NaivePermutation lf = naive_lf(bwt);
    const std::uint64_t n = bwt.size();
    std::vector<std::uint8_t> text(n);
    // Row 0 is the sentinel rotation, so BWT[0] = T[n-2].
    std::uint64_t row = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        text[(2 * n - 2 - k) % n] = bwt[row];
        row = lf[row];
    }
    return text;
}

NaivePermutation naive_phi(std::span<const std::uint64_t> sa, bool inverse_phi) {
    guard(sa.size());
    const std::uint64_t n = sa.size();
    NaivePermutation phi(n);
    for (std::uint64_t i = 0; i < n; ++i)
        phi[sa[i]] = inverse_phi ? sa[(i + 1) % n] : sa[(i + n - 1) % n];
    return phi;
}

std::vector<std::uint64_t> naive_da(std::span<const std::uint64_t> sa,
                                    std::span<const std::uint64_t> doc_starts) {
    guard(sa.size());
    std::vector<std::uint64_t> da(sa.size());
    for (std::uint64_t i = 0; i < sa.size(); ++i) {
        std::uint64_t d = 0;
        for (std::uint64_t k = 0; k < doc_starts.size(); ++k)
            if (doc_starts[k] <= sa[i]) d = k;
        da[i] = d;
    }
    return da;
}

NaivePermutation inverse(std::span<const std::uint64_t> pi) {
    NaivePermutation inv(pi.size());
    for (std::uint64_t i = 0; i < pi.size(); ++i) inv[pi[i]] = i;
    return inv;
}

bool is_bijection(std::span<const std::uint64_t> pi) {
    std::vector<bool> seen(pi.size(), false);
    for (std::uint64_t v : pi) {
        if (v >= pi.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::vector<std::uint64_t> naive_runs(std::span<const std::uint64_t> pi) {
    std::vector<std::uint64_t> starts;
    for (std::uint64_t i = 0; i < pi.size(); ++i)
        if (i == 0 || pi[i - 1] != pi[i] - 1) starts.push_back(i);
    return starts;
}

std::uint64_t simulate_fast_forwards(const IntervalTable& table, std::uint64_t i) {
    guard(table.domain_size());
    const std::vector<std::uint64_t> starts = table.starts();
    std::uint64_t j = 0;
    for (std::uint64_t q = 0; q < starts.size(); ++q)
        if (starts[q] <= i) j = q;
    const std::uint64_t entry = starts[table.dest_rank(j)];
    const std::uint64_t target = entry + table.dest_offset(j) + (i - starts[j]);
    std::uint64_t count = 0;
    for (std::uint64_t s : starts)
        if (s > entry && s <= target) ++count;
    return count;
}

} // namespace runmove::oracle
