#pragma once

// Command implementations behind the runmove executable. Each returns a process
// exit code and reports to the given streams; library errors propagate as
// runmove::Error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "runmove/move_table.hpp"
#include "runmove/rlbwt.hpp"
#include "runmove/splitting.hpp"

namespace runmove::cli {

struct RunConfig {
    std::string input;
    std::string second_input; // verify: the RLBWT to check against
    std::string output;
    PermKind kind = PermKind::lf;
    CapFactor cap{8, 1};
    std::uint64_t alpha = 0;
    Mode mode = Mode::absolute;
    Search search = Search::linear;
    std::uint64_t steps = 1'000'000;
    std::uint64_t start = 0;
    std::string docs;
    bool text_format = false; // build-rlbwt: write the debug text format

    // Throws invalid-parameter for flag combinations that cannot work.
    void check() const;
};

PermKind parse_kind(const std::string& name);
Mode parse_mode(const std::string& name);
Search parse_search(const std::string& name);

// Builds the requested permutation from an RLBWT and applies the configured
// splitting. With document bounds (phi-inv only) the table also carries the
// doc columns used by DA enumeration.
IntervalTable build_table(const Rlbwt& rl, const RunConfig& cfg, const DocBounds* docs = nullptr);

// Loads a move file, or builds from an RLBWT file (by magic) using the config.
IntervalTable load_or_build(const std::string& path, const RunConfig& cfg);

struct BenchResult {
    std::uint64_t steps = 0;
    double ns_per_query = 0;
    std::uint64_t total_ff = 0;
    std::uint64_t max_ff = 0;
};

BenchResult run_bench(const IntervalTable& table, std::uint64_t steps, std::uint64_t start,
                      Search search);

int cmd_build_rlbwt(const RunConfig& cfg, std::ostream& log);
int cmd_build(const RunConfig& cfg, std::ostream& log);
int cmd_invert(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_sa(const RunConfig& cfg, std::ostream& log);
int cmd_da(const RunConfig& cfg, std::ostream& log);
int cmd_bench(const RunConfig& cfg, std::ostream& out);
int cmd_inspect(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

} // namespace runmove::cli
