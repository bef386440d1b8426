#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "runmove/move_file.hpp"
#include "runmove/oracle.hpp"
#include "runmove/synthetic.hpp"
#include "support.hpp"

using namespace runmove;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path root;
    TempDir() {
        root = fs::temp_directory_path() / ("runmove_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(root);
    }
    ~TempDir() { fs::remove_all(root); }
    std::string operator/(const std::string& name) const { return (root / name).string(); }
};

void write_text(const std::string& path, std::string_view s) {
    std::ofstream(path, std::ios::binary).write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::vector<std::uint64_t> read_values(const std::string& path) {
    const auto bytes = read_file(path);
    std::vector<std::uint64_t> v(bytes.size() / 8);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (int b = 0; b < 8; ++b) v[i] |= std::uint64_t{bytes[8 * i + b]} << (8 * b);
    return v;
}

cli::RunConfig config(std::string in, std::string out = {}) {
    cli::RunConfig c;
    c.input = std::move(in);
    c.output = std::move(out);
    return c;
}

} // namespace

TEST_CASE("cli: abaaba through every command") {
    TempDir dir;
    std::ostringstream log, out;
    write_text(dir / "t.txt", "abaaba");
    REQUIRE(cli::cmd_build_rlbwt(config(dir / "t.txt", dir / "t.rlbw"), log) == 0);
    {
        std::ifstream in(dir / "t.rlbw", std::ios::binary);
        CHECK(read_rlbwt(in).run_count() == 5);
    }

    auto cfg = config(dir / "t.rlbw", dir / "lf.rpmv");
    cfg.mode = Mode::relative;
    REQUIRE(cli::cmd_build(cfg, log) == 0);
    const auto lf = load_table(dir / "lf.rpmv");
    CHECK(lf.max_length() <= lf.meta().cap_length);

    REQUIRE(cli::cmd_invert(config(dir / "lf.rpmv", dir / "back.txt"), out, log) == 0);
    CHECK(read_file(dir / "back.txt") == test::with_sentinel("abaaba"));
    REQUIRE(cli::cmd_build_rlbwt(config(dir / "back.txt", dir / "t2.rlbw"), log) == 0);
    CHECK(read_file(dir / "t2.rlbw") == read_file(dir / "t.rlbw"));

    std::ostringstream text_out;
    REQUIRE(cli::cmd_invert(config(dir / "t.rlbw"), text_out, log) == 0);
    CHECK(text_out.str() == std::string("abaaba\0", 7));

    REQUIRE(cli::cmd_sa(config(dir / "t.rlbw", dir / "sa.bin"), log) == 0);
    CHECK(read_values(dir / "sa.bin") == std::vector<std::uint64_t>{6, 5, 2, 3, 0, 4, 1});

    write_text(dir / "docs.txt", "0 3\n");
    auto da = config(dir / "t.rlbw", dir / "da.bin");
    da.docs = dir / "docs.txt";
    REQUIRE(cli::cmd_da(da, log) == 0);
    CHECK(read_values(dir / "da.bin") == std::vector<std::uint64_t>{1, 1, 0, 1, 0, 1, 0});

    auto phi = config(dir / "t.rlbw", dir / "pi.rpmv");
    phi.kind = PermKind::phi_inv;
    phi.docs = dir / "docs.txt";
    REQUIRE(cli::cmd_build(phi, log) == 0);
    REQUIRE(cli::cmd_da(config(dir / "pi.rpmv", dir / "da2.bin"), log) == 0);
    CHECK(read_values(dir / "da2.bin") == read_values(dir / "da.bin"));

    std::ostringstream verify_out;
    auto v = config(dir / "pi.rpmv");
    v.second_input = dir / "t.rlbw";
    CHECK(cli::cmd_verify(v, verify_out) == 0);
    CHECK(verify_out.str().find("verified") != std::string::npos);
}

TEST_CASE("cli: uncapped, unbalanced build keeps r intervals") {
    TempDir dir;
    std::ostringstream log;
    std::mt19937_64 rng(1);
    write_text(dir / "t.txt", synthetic::repetitive_text(rng, 256, 8, 4));
    REQUIRE(cli::cmd_build_rlbwt(config(dir / "t.txt", dir / "t.rlbw"), log) == 0);
    std::ifstream in(dir / "t.rlbw", std::ios::binary);
    const auto rl = read_rlbwt(in);
    auto cfg = config(dir / "t.rlbw", dir / "lf.rpmv");
    cfg.cap = {};
    REQUIRE(cli::cmd_build(cfg, log) == 0);
    CHECK(load_table(dir / "lf.rpmv").interval_count() == rl.run_count());
}

TEST_CASE("cli: inspect reports the space formula") {
    TempDir dir;
    std::ostringstream log, out;
    std::mt19937_64 rng(2);
    write_text(dir / "t.txt", synthetic::repetitive_text(rng, 256, 8, 4));
    cli::cmd_build_rlbwt(config(dir / "t.txt", dir / "t.rlbw"), log);
    auto cfg = config(dir / "t.rlbw", dir / "lf.rpmv");
    cfg.mode = Mode::relative;
    cfg.cap = {1, 1};
    cli::cmd_build(cfg, log);
    REQUIRE(cli::cmd_inspect(config(dir / "lf.rpmv"), out) == 0);
    const auto t = load_table(dir / "lf.rpmv");
    std::uint64_t widths = 0;
    for (const auto& c : t.matrix().columns()) widths += c.width;
    CHECK(t.matrix().payload_bits() == t.interval_count() * widths);
    CHECK(out.str().find("payload bits    " + std::to_string(t.interval_count() * widths)) !=
          std::string::npos);
    // Length column width is bits(max length) <= bits(L).
    CHECK(t.matrix().columns()[0].width <= min_width(t.meta().cap_length));
}

TEST_CASE("cli: bench CSV") {
    TempDir dir;
    std::ostringstream log, out;
    write_text(dir / "t.txt", "mississippi");
    cli::cmd_build_rlbwt(config(dir / "t.txt", dir / "t.rlbw"), log);
    auto cfg = config(dir / "t.rlbw");
    cfg.steps = 1000;
    cfg.search = Search::exponential;
    REQUIRE(cli::cmd_bench(cfg, out) == 0);
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "steps,ns_per_query,total_ff,max_ff");
    CHECK(row.rfind("1000,", 0) == 0);
}

TEST_CASE("cli: rejected configurations and corrupted files") {
    TempDir dir;
    std::ostringstream log, out;
    auto cfg = config("x");
    cfg.mode = Mode::relative;
    cfg.search = Search::exponential;
    CHECK_THROWS_AS(cfg.check(), Error);
    cfg = config("x");
    cfg.alpha = 1;
    CHECK_THROWS_AS(cfg.check(), Error);
    cfg = config("x");
    cfg.docs = "d";
    CHECK_THROWS_AS(cfg.check(), Error);
    CHECK_THROWS_AS(cli::parse_kind("psi"), Error);

    write_text(dir / "empty.txt", "");
    CHECK_THROWS_AS(cli::cmd_build_rlbwt(config(dir / "empty.txt", dir / "e.rlbw"), log), Error);
    write_text(dir / "nul.txt", std::string_view("a\0b", 3));
    CHECK_THROWS_AS(cli::cmd_build_rlbwt(config(dir / "nul.txt", dir / "e.rlbw"), log), Error);

    write_text(dir / "t.txt", "abaaba");
    cli::cmd_build_rlbwt(config(dir / "t.txt", dir / "t.rlbw"), log);
    cli::cmd_build(config(dir / "t.rlbw", dir / "lf.rpmv"), log);
    auto bytes = read_file(dir / "lf.rpmv");
    bytes[bytes.size() - 1] ^= 0xff;
    write_file(dir / "bad.rpmv", bytes);
    auto v = config(dir / "bad.rpmv");
    v.second_input = dir / "t.rlbw";
    try {
        cli::cmd_verify(v, out);
        FAIL("verify accepted a corrupted file");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::corrupt_file);
    }
    CHECK_THROWS_AS(cli::cmd_invert(config(dir / "t.txt"), out, log), Error);
}

TEST_CASE("cli: commands are deterministic") {
    TempDir dir;
    std::ostringstream log;
    std::mt19937_64 rng(3);
    write_text(dir / "t.txt", synthetic::random_text(rng, 3000, 4));
    cli::cmd_build_rlbwt(config(dir / "t.txt", dir / "a.rlbw"), log);
    cli::cmd_build_rlbwt(config(dir / "t.txt", dir / "b.rlbw"), log);
    CHECK(read_file(dir / "a.rlbw") == read_file(dir / "b.rlbw"));
    for (PermKind k : {PermKind::lf, PermKind::fl, PermKind::phi, PermKind::phi_inv}) {
        auto cfg = config(dir / "a.rlbw", dir / "x.rpmv");
        cfg.kind = k;
        cfg.cap = {1, 2};
        cfg.alpha = 4;
        cli::cmd_build(cfg, log);
        cfg.output = dir / "y.rpmv";
        cli::cmd_build(cfg, log);
        CHECK(read_file(dir / "x.rpmv") == read_file(dir / "y.rpmv"));
        std::ostringstream out;
        auto v = config(dir / "x.rpmv");
        v.second_input = dir / "a.rlbw";
        CHECK(cli::cmd_verify(v, out) == 0);
    }
}
