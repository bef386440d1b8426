#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "runmove/move_file.hpp"
#include "runmove/oracle.hpp"
#include "runmove/traversal.hpp"

namespace runmove::cli {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open " + path + " for writing");
    return out;
}

std::string magic_of(const std::string& path) {
    auto in = open_in(path);
    char m[4] = {};
    in.read(m, 4);
    return std::string(m, static_cast<std::size_t>(in.gcount()));
}

Rlbwt load_rlbwt(const std::string& path) {
    auto in = open_in(path);
    return read_rlbwt(in);
}

DocBounds load_docs(const std::string& path, std::uint64_t n) {
    auto in = open_in(path);
    return read_doc_bounds(in, n);
}

void require_output(const RunConfig& cfg) {
    if (cfg.output.empty()) throw Error(Errc::invalid_parameter, "an output path (-o) is required");
}

void print_stats(std::ostream& log, const TraversalStats& s) {
    log << "queries " << s.steps << ", fast forwards total " << s.total_fast_forwards << " max "
        << s.max_fast_forwards;
    if (s.steps) log << " mean " << std::fixed << std::setprecision(4)
                     << static_cast<double>(s.total_fast_forwards) / static_cast<double>(s.steps);
    log << '\n';
}

struct Checker {
    std::ostream& out;
    bool ok = true;

    void operator()(bool pass, const std::string& what) {
        out << (pass ? "ok    " : "FAIL  ") << what << '\n';
        ok = ok && pass;
    }
};

} // namespace

void RunConfig::check() const {
    if (search == Search::exponential && mode != Mode::absolute)
        throw Error(Errc::invalid_parameter, "--search exp requires --mode abs");
    if (alpha == 1) throw Error(Errc::invalid_parameter, "--balance must be 0 or at least 2");
    if (!docs.empty() && kind != PermKind::phi_inv)
        throw Error(Errc::invalid_parameter, "--docs applies to --perm phi-inv only");
}

PermKind parse_kind(const std::string& name) {
    if (name == "lf") return PermKind::lf;
    if (name == "fl") return PermKind::fl;
    if (name == "phi") return PermKind::phi;
    if (name == "phi-inv") return PermKind::phi_inv;
    throw Error(Errc::invalid_parameter, "unknown permutation '" + name + "'");
}

Mode parse_mode(const std::string& name) {
    if (name == "abs") return Mode::absolute;
    if (name == "rel") return Mode::relative;
    throw Error(Errc::invalid_parameter, "unknown mode '" + name + "'");
}

Search parse_search(const std::string& name) {
    if (name == "linear") return Search::linear;
    if (name == "exp") return Search::exponential;
    throw Error(Errc::invalid_parameter, "unknown search '" + name + "'");
}

IntervalTable build_table(const Rlbwt& rl, const RunConfig& cfg, const DocBounds* docs) {
    cfg.check();
    IntervalTable t;
    switch (cfg.kind) {
    case PermKind::lf: t = build_lf(rl, cfg.mode); break;
    case PermKind::fl: t = build_fl(rl, cfg.mode); break;
    case PermKind::phi: t = build_phi_via_lf(rl, false, cfg.mode).table; break;
    case PermKind::phi_inv: t = build_phi_via_lf(rl, true, cfg.mode).table; break;
    case PermKind::generic: throw Error(Errc::invalid_parameter, "cannot build a generic permutation");
    }
    if (docs) {
        if (cfg.kind != PermKind::phi_inv)
            throw Error(Errc::invalid_parameter, "document bounds apply to phi-inv only");
        t = split_for_documents(t, *docs);
    }
    t = apply_splits(t, {cfg.cap, cfg.alpha});
    if (docs) t = with_doc_columns(t, *docs);
    return t;
}

IntervalTable load_or_build(const std::string& path, const RunConfig& cfg) {
    const std::string magic = magic_of(path);
    if (magic == "RPMV") return load_table(path);
    if (magic == "RLBW") {
        const Rlbwt rl = load_rlbwt(path);
        if (cfg.docs.empty()) return build_table(rl, cfg);
        const DocBounds docs = load_docs(cfg.docs, rl.size());
        return build_table(rl, cfg, &docs);
    }
    throw Error(Errc::invalid_input, path + " is neither a move file nor an RLBWT file");
}

namespace {

// Timed loop with only the counters the CSV reports.
template <Search S>
BenchResult timed_chain(const IntervalTable& t, MoveCursor cur, std::uint64_t steps) {
    std::uint64_t total = 0, worst = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < steps; ++i) {
        const MoveStep s = S == Search::exponential ? t.move_exponential(cur) : t.move_linear(cur);
        cur = s.cursor;
        total += s.fast_forwards;
        worst = std::max(worst, s.fast_forwards);
    }
    const auto t1 = std::chrono::steady_clock::now();
    BenchResult r;
    r.steps = steps;
    const double ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
    r.ns_per_query = steps ? ns / static_cast<double>(steps) : 0.0;
    r.total_ff = total;
    r.max_ff = worst;
    return r;
}

} // namespace

BenchResult run_bench(const IntervalTable& table, std::uint64_t steps, std::uint64_t start,
                      Search search) {
    if (search == Search::exponential && table.mode() != Mode::absolute)
        throw Error(Errc::unsupported_mode, "exponential search requires absolute mode");
    const MoveCursor cur = table.cursor_of(start);
    if (search == Search::exponential) return timed_chain<Search::exponential>(table, cur, steps);
    return timed_chain<Search::linear>(table, cur, steps);
}

int cmd_build_rlbwt(const RunConfig& cfg, std::ostream& log) {
    require_output(cfg);
    const std::vector<std::uint8_t> text = read_file(cfg.input);
    const BwtBuild b = build_bwt(text);
    auto out = open_out(cfg.output);
    if (cfg.text_format)
        write_rlbwt_text(out, b.rlbwt);
    else
        write_rlbwt(out, b.rlbwt);
    if (!out) throw Error(Errc::io, "failed writing " + cfg.output);
    log << "n " << b.rlbwt.size() << ", r " << b.rlbwt.run_count() << ", sigma " << b.rlbwt.sigma()
        << '\n';
    return 0;
}

int cmd_build(const RunConfig& cfg, std::ostream& log) {
    require_output(cfg);
    cfg.check();
    const Rlbwt rl = load_rlbwt(cfg.input);
    IntervalTable t;
    if (cfg.docs.empty()) {
        t = build_table(rl, cfg);
    } else {
        const DocBounds docs = load_docs(cfg.docs, rl.size());
        t = build_table(rl, cfg, &docs);
    }
    save_table(cfg.output, t);
    log << to_string(t.kind()) << ": n " << t.domain_size() << ", r " << rl.run_count() << ", r' "
        << t.interval_count() << ", L " << t.meta().cap_length << ", max length " << t.max_length()
        << '\n';
    return 0;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    RunConfig build_cfg = cfg;
    build_cfg.kind = PermKind::lf;
    build_cfg.docs.clear();
    build_cfg.check();
    const IntervalTable lf = load_or_build(cfg.input, build_cfg);
    if (lf.kind() != PermKind::lf) throw Error(Errc::invalid_input, "invert needs an LF move file");
    TraversalStats stats;
    if (cfg.output.empty()) {
        TextRestoringSink sink(lf.domain_size());
        stats = invert_bwt(lf, sink, cfg.search);
        out.write(reinterpret_cast<const char*>(sink.text.data()),
                  static_cast<std::streamsize>(sink.text.size()));
    } else {
        TextRestoringFileSink sink(cfg.output, lf.domain_size());
        stats = invert_bwt(lf, sink, cfg.search);
    }
    print_stats(log, stats);
    return 0;
}

int cmd_sa(const RunConfig& cfg, std::ostream& log) {
    require_output(cfg);
    RunConfig build_cfg = cfg;
    build_cfg.kind = PermKind::phi_inv;
    build_cfg.docs.clear();
    build_cfg.check();
    const IntervalTable t = load_or_build(cfg.input, build_cfg);
    if (t.kind() != PermKind::phi_inv) throw Error(Errc::invalid_input, "sa needs a phi-inv move file");
    FileValueSink sink(cfg.output);
    print_stats(log, enumerate_sa(t, t.domain_size() - 1, sink, cfg.search));
    return 0;
}

int cmd_da(const RunConfig& cfg, std::ostream& log) {
    require_output(cfg);
    RunConfig build_cfg = cfg;
    build_cfg.kind = PermKind::phi_inv;
    build_cfg.check();
    if (magic_of(cfg.input) == "RLBW" && cfg.docs.empty())
        throw Error(Errc::invalid_parameter, "da from an RLBWT needs --docs");
    const IntervalTable t = load_or_build(cfg.input, build_cfg);
    if (t.kind() != PermKind::phi_inv) throw Error(Errc::invalid_input, "da needs a phi-inv move file");
    FileValueSink sink(cfg.output);
    print_stats(log, enumerate_da(t, t.domain_size() - 1, sink, cfg.search));
    return 0;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    cfg.check();
    const IntervalTable t = load_or_build(cfg.input, cfg);
    const BenchResult r = run_bench(t, cfg.steps, cfg.start, cfg.search);
    out << "steps,ns_per_query,total_ff,max_ff\n";
    out << r.steps << ',' << std::fixed << std::setprecision(3) << r.ns_per_query << ',' << r.total_ff
        << ',' << r.max_ff << '\n';
    return 0;
}

int cmd_inspect(const RunConfig& cfg, std::ostream& out) {
    const std::vector<std::uint8_t> bytes = read_file(cfg.input);
    const IntervalTable t = deserialize(bytes);
    const SplitMeta& m = t.meta();
    const PackedMatrix& mat = t.matrix();
    out << "kind            " << to_string(t.kind()) << '\n';
    out << "mode            " << to_string(t.mode()) << '\n';
    out << "n               " << t.domain_size() << '\n';
    out << "r'              " << t.interval_count() << '\n';
    out << "source r        " << m.source_runs << '\n';
    out << "c               " << (m.cap_num ? CapFactor{m.cap_num, m.cap_den}.to_string() : "0") << '\n';
    out << "alpha           " << m.alpha << '\n';
    out << "L               " << m.cap_length << '\n';
    out << "max length      " << t.max_length() << '\n';
    out << "columns        ";
    std::uint64_t width_sum = 0;
    for (const auto& c : mat.columns()) {
        out << ' ' << c.name << ':' << c.width;
        width_sum += c.width;
    }
    out << '\n';
    out << "row bits        " << mat.row_stride_bits() << '\n';
    out << "payload bits    " << mat.payload_bits() << '\n';
    out << "payload bytes   " << mat.payload_bytes() << '\n';
    // r' * sum(widths) / 8, exact to the bit.
    const std::uint64_t formula_bits = t.interval_count() * width_sum;
    out << "formula bytes   " << formula_bits / 8;
    if (formula_bits % 8) out << '.' << (formula_bits % 8) * 125;
    out << '\n';
    out << "file bytes      " << bytes.size() << '\n';
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const IntervalTable t = load_table(cfg.input);
    const Rlbwt rl = load_rlbwt(cfg.second_input);
    Checker check{out};
    const std::uint64_t n = t.domain_size();
    check(n == rl.size(), "domain size matches the RLBWT");
    if (!check.ok) return 1;
    if (n > oracle::kOracleLimit)
        throw Error(Errc::too_large, "verify is limited to n <= " + std::to_string(oracle::kOracleLimit));

    bool valid = true;
    try {
        t.validate();
    } catch (const Error& e) {
        valid = false;
        out << "      " << e.what() << '\n';
    }
    check(valid, "structural validation");
    if (!valid) return 1;

    const std::vector<std::uint8_t> bwt = rl.expand();
    const std::vector<std::uint8_t> text = oracle::naive_invert(bwt);
    std::vector<std::uint64_t> ref;
    std::vector<std::uint64_t> sa;
    switch (t.kind()) {
    case PermKind::lf: ref = oracle::naive_lf(bwt); break;
    case PermKind::fl: ref = oracle::naive_fl(bwt); break;
    case PermKind::phi:
    case PermKind::phi_inv:
        sa = oracle::naive_sa(text);
        ref = oracle::naive_phi(sa, t.kind() == PermKind::phi_inv);
        break;
    case PermKind::generic: break;
    }
    if (t.kind() == PermKind::generic)
        out << "skip  oracle equivalence (generic permutation)\n";
    else
        check(t.evaluate_all() == ref, std::string("equals the naive ") + to_string(t.kind()));

    if (t.kind() == PermKind::lf && t.column("sym"))
        check(recover_text(t) == text, "inversion recovers the text");
    if (t.kind() == PermKind::phi_inv) {
        MemoryValueSink sink;
        enumerate_sa(t, n - 1, sink);
        check(sink.values == sa, "SA enumeration equals the naive suffix array");
    }

    const SplitMeta& m = t.meta();
    std::uint64_t max_ff = 0;
    for (std::uint64_t i = 0; i < n; ++i) max_ff = std::max(max_ff, t.move(t.cursor_of(i)).fast_forwards);
    if (m.cap_num) {
        const std::uint64_t L = m.cap_length;
        check(L == cap_length(n, m.source_runs, {m.cap_num, m.cap_den}), "L matches c, n and r");
        check(t.max_length() <= L, "max interval length <= L");
        check(max_ff <= L, "per-query fast forwards <= L");
        if (!m.alpha) {
            check(t.interval_count() <= m.source_runs + n / L, "r' <= r + floor(n/L)");
            const auto cycle = traverse_counted(t, {0, 0}, n);
            check(cycle.stats.total_fast_forwards * m.cap_den <= n * (m.cap_num + m.cap_den),
                  "full-cycle fast forwards <= n(c+1)");
        }
    }
    if (m.alpha) check(max_ff < 2 * m.alpha, "per-query fast forwards < 2 alpha");
    out << (check.ok ? "verified\n" : "verification FAILED\n");
    return check.ok ? 0 : 1;
}

} // namespace runmove::cli
