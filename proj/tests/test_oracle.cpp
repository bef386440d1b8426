#include "doctest.h"
#include "runmove/oracle.hpp"
#include "support.hpp"

using namespace runmove;
using runmove::test::with_sentinel;

TEST_CASE("oracle: abaaba by hand") {
    const auto text = with_sentinel("abaaba");
    const auto sa = oracle::naive_sa(text);
    CHECK(sa == std::vector<std::uint64_t>{6, 5, 2, 3, 0, 4, 1});
    const auto bwt = oracle::naive_bwt(text, sa);
    CHECK(bwt == std::vector<std::uint8_t>{'a', 'b', 'b', 'a', 0, 'a', 'a'});
    CHECK(oracle::naive_lf(bwt) == std::vector<std::uint64_t>{1, 5, 6, 2, 0, 3, 4});
    CHECK(oracle::naive_invert(bwt) == text);
    const auto phi = oracle::naive_phi(sa, false);
    CHECK(phi == std::vector<std::uint64_t>{3, 4, 5, 2, 0, 6, 1});
    CHECK(oracle::naive_phi(sa, true) == oracle::inverse(phi));
    CHECK(oracle::naive_runs(phi) == std::vector<std::uint64_t>{0, 3, 4, 5, 6});
}

TEST_CASE("oracle: bijection and runs") {
    CHECK(oracle::is_bijection(std::vector<std::uint64_t>{2, 0, 1}));
    CHECK_FALSE(oracle::is_bijection(std::vector<std::uint64_t>{0, 0, 1}));
    CHECK_FALSE(oracle::is_bijection(std::vector<std::uint64_t>{0, 3, 1}));
    CHECK(oracle::naive_runs(test::kExamplePermutation) ==
          std::vector<std::uint64_t>{0, 2, 5, 6, 8, 10, 11, 12, 13});
    CHECK(oracle::inverse(std::vector<std::uint64_t>{2, 0, 1}) == std::vector<std::uint64_t>{1, 2, 0});
}

TEST_CASE("oracle: size guard") {
    std::vector<std::uint8_t> big(oracle::kOracleLimit + 1, 'a');
    big.back() = 0;
    CHECK_THROWS_AS(oracle::naive_sa(big), Error);
}
