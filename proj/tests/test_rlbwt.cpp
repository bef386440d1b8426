#include <random>
#include <sstream>

#include "doctest.h"
#include "runmove/oracle.hpp"
#include "runmove/rlbwt.hpp"
#include "runmove/synthetic.hpp"
#include "support.hpp"

using namespace runmove;
using runmove::test::with_sentinel;

namespace {

std::vector<std::string> corpus(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> out = {"a", "ab", "aaaa", "abaaba", "mississippi", "banana"};
    for (int i = 0; i < count; ++i)
        out.push_back(synthetic::random_text(rng, 1 + rng() % 1500, 1 + static_cast<unsigned>(rng() % 4)));
    out.push_back(synthetic::repetitive_text(rng, 200, 6, 3));
    return out;
}

} // namespace

TEST_CASE("abaaba: suffix array, BWT and LF") {
    const auto b = build_bwt("abaaba");
    CHECK(b.text == with_sentinel("abaaba"));
    CHECK(b.sa == std::vector<std::uint64_t>{6, 5, 2, 3, 0, 4, 1});
    const std::vector<std::uint8_t> bwt = {'a', 'b', 'b', 'a', 0, 'a', 'a'};
    CHECK(b.rlbwt.expand() == bwt);
    CHECK(b.rlbwt.run_count() == 5);
    CHECK(b.rlbwt.sigma() == 3);

    const auto lf = build_lf(b.rlbwt);
    lf.validate();
    CHECK(lf.kind() == PermKind::lf);
    CHECK(lf.evaluate_all() == std::vector<std::uint64_t>{1, 5, 6, 2, 0, 3, 4});
    CHECK(lf.column("sym").has_value());
}

TEST_CASE("abaaba: phi") {
    const auto b = build_bwt("abaaba");
    const auto phi = build_phi_via_lf(b.rlbwt, false);
    phi.table.validate();
    CHECK(phi.table.evaluate_all() == std::vector<std::uint64_t>{3, 4, 5, 2, 0, 6, 1});
    CHECK(phi.table.starts() == std::vector<std::uint64_t>{0, 3, 4, 5, 6});
    CHECK(phi.samples.head == std::vector<std::uint64_t>{6, 5, 3, 0, 4});
    CHECK(phi.samples.tail == std::vector<std::uint64_t>{6, 2, 3, 0, 1});
}

TEST_CASE("small edge texts") {
    auto b = build_bwt("aaaa");
    CHECK(b.sa == std::vector<std::uint64_t>{4, 3, 2, 1, 0});
    CHECK(b.rlbwt.expand() == with_sentinel("aaaa"));
    b = build_bwt("a");
    CHECK(b.sa == std::vector<std::uint64_t>{1, 0});
    CHECK(b.rlbwt.expand() == with_sentinel("a"));
    // A single trailing sentinel is accepted.
    CHECK(build_bwt(std::string_view("ab\0", 3)).text == with_sentinel("ab"));
    CHECK_THROWS_AS(build_bwt(""), Error);
    CHECK_THROWS_AS(build_bwt(std::string_view("a\0b", 3)), Error);
}

TEST_CASE("suffix array matches direct comparison") {
    for (const auto& s : corpus(1, 60)) {
        const auto b = build_bwt(s);
        CHECK(b.sa == oracle::naive_sa(b.text));
        CHECK(b.rlbwt.expand() == oracle::naive_bwt(b.text, b.sa));
    }
}

TEST_CASE("LF and FL match the definitional oracles in both modes") {
    for (const auto& s : corpus(2, 100)) {
        const auto b = build_bwt(s);
        const auto bwt = b.rlbwt.expand();
        const auto lf_ref = oracle::naive_lf(bwt);
        const auto fl_ref = oracle::naive_fl(bwt);
        CHECK(fl_ref == oracle::inverse(lf_ref));
        for (Mode mode : {Mode::absolute, Mode::relative}) {
            const auto lf = build_lf(b.rlbwt, mode);
            const auto fl = build_fl(b.rlbwt, mode);
            lf.validate();
            fl.validate();
            CHECK(lf.interval_count() == b.rlbwt.run_count());
            CHECK(lf.evaluate_all() == lf_ref);
            CHECK(fl.evaluate_all() == fl_ref);
            CHECK(fl.interval_count() >= RunPermutation::from_array(fl_ref).run_count());
            CHECK(fl.interval_count() <= b.rlbwt.run_count());
        }
    }
}

TEST_CASE("phi and phi inverse: traversal builder agrees with the sorted builder and the oracle") {
    for (const auto& s : corpus(3, 50)) {
        const auto b = build_bwt(s);
        for (bool inverse : {false, true}) {
            const auto ref = oracle::naive_phi(b.sa, inverse);
            for (Mode mode : {Mode::absolute, Mode::relative}) {
                const auto via = build_phi_via_lf(b.rlbwt, inverse, mode);
                const auto sorted = build_phi_sorted(b.rlbwt, inverse, mode);
                via.table.validate();
                CHECK(via.table.kind() == (inverse ? PermKind::phi_inv : PermKind::phi));
                CHECK(via.table == sorted);
                CHECK(via.table.evaluate_all() == ref);
                CHECK(via.table.interval_count() <= b.rlbwt.run_count());
            }
        }
    }
}

TEST_CASE("SA samples are the SA at run heads and tails") {
    for (const auto& s : corpus(4, 30)) {
        const auto b = build_bwt(s);
        const auto samples = sample_sa(b.rlbwt);
        std::uint64_t row = 0;
        for (std::size_t t = 0; t < b.rlbwt.run_count(); ++t) {
            const auto len = b.rlbwt.runs()[t].length;
            CHECK(samples.head[t] == b.sa[row]);
            CHECK(samples.tail[t] == b.sa[row + len - 1]);
            row += len;
        }
    }
}

TEST_CASE("document bounds") {
    const DocBounds d({0, 3}, 7);
    CHECK(d.count() == 2);
    CHECK(d.doc_of(0) == 0);
    CHECK(d.doc_of(2) == 0);
    CHECK(d.doc_of(3) == 1);
    CHECK(d.doc_of(6) == 1);
    CHECK_THROWS_AS(DocBounds({1, 3}, 7), Error);
    CHECK_THROWS_AS(DocBounds({0, 3, 3}, 7), Error);
    CHECK_THROWS_AS(DocBounds({0, 7}, 7), Error);

    std::istringstream in("0\n3 5\n");
    const auto r = read_doc_bounds(in, 7);
    CHECK(std::vector<std::uint64_t>(r.starts().begin(), r.starts().end()) ==
          std::vector<std::uint64_t>{0, 3, 5});
    std::istringstream bad("0 x");
    CHECK_THROWS_AS(read_doc_bounds(bad, 7), Error);

    const auto b = build_bwt("abaaba");
    const auto samples = sample_docs(sample_sa(b.rlbwt), d);
    for (std::size_t t = 0; t < samples.head.size(); ++t) {
        CHECK(samples.head_doc[t] == d.doc_of(samples.head[t]));
        CHECK(samples.tail_doc[t] == d.doc_of(samples.tail[t]));
    }
}

TEST_CASE("RLBWT validation") {
    CHECK_THROWS_AS(Rlbwt(std::vector<BwtRun>{}), Error);
    CHECK_THROWS_AS(Rlbwt({{'a', 1}, {'a', 1}, {0, 1}}), Error);
    CHECK_THROWS_AS(Rlbwt({{'a', 0}, {0, 1}}), Error);
    CHECK_THROWS_AS(Rlbwt({{'a', 2}}), Error);
    CHECK_THROWS_AS(Rlbwt({{0, 1}, {'a', 1}, {0, 1}}), Error);
    const std::vector<std::uint8_t> two_sentinels = {'a', 0, 0};
    CHECK_THROWS_AS(Rlbwt::from_bwt(two_sentinels), Error);
}

TEST_CASE("RLBWT binary and text files round trip") {
    const auto rl = build_bwt("mississippi").rlbwt;
    std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
    write_rlbwt(bin, rl);
    CHECK(read_rlbwt(bin) == rl);

    std::stringstream txt;
    write_rlbwt_text(txt, rl);
    CHECK(read_rlbwt_text(txt) == rl);

    std::string raw;
    {
        std::ostringstream o(std::ios::binary);
        write_rlbwt(o, rl);
        raw = o.str();
    }
    CHECK(raw.substr(0, 4) == "RLBW");
    std::istringstream truncated(raw.substr(0, raw.size() - 3), std::ios::binary);
    CHECK_THROWS_AS(read_rlbwt(truncated), Error);
    std::string bad_magic = raw;
    bad_magic[0] = 'X';
    std::istringstream bm(bad_magic, std::ios::binary);
    CHECK_THROWS_AS(read_rlbwt(bm), Error);
}
