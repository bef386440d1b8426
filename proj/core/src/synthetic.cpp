#include "runmove/synthetic.hpp"

#include <algorithm>
#include <numeric>

namespace runmove::synthetic {

std::string random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    if (sigma == 0 || sigma > 26) throw Error(Errc::invalid_parameter, "sigma must be in 1..26");
    std::uniform_int_distribution<unsigned> letter(0, sigma - 1);
    std::string s(n, 'a');
    for (auto& c : s) c = static_cast<char>('a' + letter(rng));
    return s;
}

std::string repetitive_text(std::mt19937_64& rng, std::size_t seed_len, std::size_t copies,
                            std::size_t mutations, unsigned sigma) {
    const std::string seed = random_text(rng, seed_len, sigma);
    std::uniform_int_distribution<std::size_t> where(0, seed_len - 1);
    std::uniform_int_distribution<unsigned> letter(0, sigma - 1);
    std::string out;
    out.reserve(seed_len * copies);
    for (std::size_t c = 0; c < copies; ++c) {
        std::string copy = seed;
        for (std::size_t m = 0; m < mutations; ++m) copy[where(rng)] = static_cast<char>('a' + letter(rng));
        out += copy;
    }
    return out;
}

RunPermutation random_runny_permutation(std::mt19937_64& rng, std::uint64_t n, std::uint64_t r) {
    if (n == 0 || r == 0 || r > n) throw Error(Errc::invalid_parameter, "need 1 <= r <= n");
    // r-1 distinct cut points in [1, n).
    std::vector<std::uint64_t> cuts;
    if (r > 1) {
        std::vector<std::uint64_t> all(n - 1);
        std::iota(all.begin(), all.end(), 1);
        std::shuffle(all.begin(), all.end(), rng);
        cuts.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(r - 1));
        std::sort(cuts.begin(), cuts.end());
    }
    RunPermutation out;
    out.n = n;
    out.starts.push_back(0);
    out.starts.insert(out.starts.end(), cuts.begin(), cuts.end());
    std::vector<std::size_t> order(out.starts.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    out.images.resize(out.starts.size());
    std::uint64_t next = 0;
    for (std::size_t t : order) {
        out.images[t] = next;
        next += out.length(t);
    }
    return out;
}

std::vector<std::uint64_t> adversarial_permutation(std::uint64_t n, std::uint64_t u,
                                                   std::uint64_t seed) {
    if (u == 0 || 2 * u > n) throw Error(Errc::invalid_parameter, "need 0 < u <= n/2");
    const std::uint64_t m = n - u;
    std::vector<std::uint64_t> pi(n);
    for (std::uint64_t x = 0; x < m; ++x) pi[x] = x + u;
    // Each y in [0, u) starts a chain y, y+u, ... that leaves [0, m) at exit(y).
    std::vector<std::uint64_t> order(u);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint64_t i = 0; i < u; ++i) {
        std::uint64_t x = order[i];
        while (x < m) x += u;
        pi[x] = order[(i + 1) % u];
    }
    return pi;
}

} // namespace runmove::synthetic
