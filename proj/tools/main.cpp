#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "runmove/error.hpp"

using namespace runmove;

namespace {

struct Flags {
    std::string perm = "lf";
    std::string cap = "8";
    std::string mode = "abs";
    std::string search = "linear";
};

void add_split_flags(CLI::App* sub, Flags& f, cli::RunConfig& cfg) {
    sub->add_option("--cap", f.cap, "length-cap factor c (p/q or decimal, 0 disables)")
        ->capture_default_str();
    sub->add_option("--balance", cfg.alpha, "balancing parameter alpha (0 disables)")
        ->capture_default_str();
    sub->add_option("--mode", f.mode, "column layout")
        ->check(CLI::IsMember({"abs", "rel"}))
        ->capture_default_str();
}

void add_search_flag(CLI::App* sub, Flags& f) {
    sub->add_option("--search", f.search, "predecessor search after a move")
        ->check(CLI::IsMember({"linear", "exp"}))
        ->capture_default_str();
}

void add_perm_flag(CLI::App* sub, Flags& f) {
    sub->add_option("--perm", f.perm, "permutation to build")
        ->check(CLI::IsMember({"lf", "fl", "phi", "phi-inv"}))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Move structures for runny permutations"};
    app.require_subcommand(1);
    cli::RunConfig cfg;
    Flags f;

    auto* build_rlbwt = app.add_subcommand("build-rlbwt", "run-length BWT of a text file");
    build_rlbwt->add_option("input", cfg.input, "input text file")->required()->check(CLI::ExistingFile);
    build_rlbwt->add_option("-o", cfg.output, "output RLBWT file")->required();
    build_rlbwt->add_flag("--text", cfg.text_format, "write the debug text format");

    auto* build = app.add_subcommand("build", "build and save a move structure from an RLBWT");
    build->add_option("rlbwt", cfg.input, "input RLBWT file")->required()->check(CLI::ExistingFile);
    build->add_option("-o", cfg.output, "output move file")->required();
    add_perm_flag(build, f);
    add_split_flags(build, f, cfg);
    build->add_option("--docs", cfg.docs, "document start positions (phi-inv)")->check(CLI::ExistingFile);

    auto* invert = app.add_subcommand("invert", "recover the text from an LF move file or RLBWT");
    invert->add_option("input", cfg.input, "LF move file or RLBWT file")->required()->check(CLI::ExistingFile);
    invert->add_option("-o", cfg.output, "output text file (default: standard output)");
    add_split_flags(invert, f, cfg);
    add_search_flag(invert, f);

    auto* sa = app.add_subcommand("sa", "write the suffix array as 64-bit little-endian values");
    sa->add_option("input", cfg.input, "phi-inv move file or RLBWT file")->required()->check(CLI::ExistingFile);
    sa->add_option("-o", cfg.output, "output file")->required();
    add_split_flags(sa, f, cfg);
    add_search_flag(sa, f);

    auto* da = app.add_subcommand("da", "write the document array as 64-bit little-endian values");
    da->add_option("input", cfg.input, "phi-inv move file built with --docs, or RLBWT file")
        ->required()
        ->check(CLI::ExistingFile);
    da->add_option("-o", cfg.output, "output file")->required();
    da->add_option("--docs", cfg.docs, "document start positions")->check(CLI::ExistingFile);
    add_split_flags(da, f, cfg);
    add_search_flag(da, f);

    auto* bench = app.add_subcommand("bench", "time chained move queries; CSV on standard output");
    bench->add_option("input", cfg.input, "move file or RLBWT file")->required()->check(CLI::ExistingFile);
    bench->add_option("--steps", cfg.steps, "number of queries")->capture_default_str();
    bench->add_option("--start", cfg.start, "starting position")->capture_default_str();
    add_perm_flag(bench, f);
    add_split_flags(bench, f, cfg);
    add_search_flag(bench, f);

    auto* inspect = app.add_subcommand("inspect", "print header fields and space accounting");
    inspect->add_option("move", cfg.input, "move file")->required()->check(CLI::ExistingFile);

    auto* verify = app.add_subcommand("verify", "check a move file against an RLBWT with brute force");
    verify->add_option("move", cfg.input, "move file")->required()->check(CLI::ExistingFile);
    verify->add_option("rlbwt", cfg.second_input, "RLBWT file")->required()->check(CLI::ExistingFile);

    app.callback([&] {
        if (f.search == "exp" && f.mode != "abs")
            throw CLI::ValidationError("--search", "exp requires --mode abs");
        if (cfg.alpha == 1) throw CLI::ValidationError("--balance", "must be 0 or at least 2");
    });

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.kind = cli::parse_kind(f.perm);
        cfg.mode = cli::parse_mode(f.mode);
        cfg.search = cli::parse_search(f.search);
        cfg.cap = CapFactor::parse(f.cap);
        if (build->parsed() && !cfg.docs.empty() && cfg.kind != PermKind::phi_inv)
            throw Error(Errc::invalid_parameter, "--docs applies to --perm phi-inv only");

        if (build_rlbwt->parsed()) return cli::cmd_build_rlbwt(cfg, std::cerr);
        if (build->parsed()) return cli::cmd_build(cfg, std::cerr);
        if (invert->parsed()) return cli::cmd_invert(cfg, std::cout, std::cerr);
        if (sa->parsed()) return cli::cmd_sa(cfg, std::cerr);
        if (da->parsed()) return cli::cmd_da(cfg, std::cerr);
        if (bench->parsed()) return cli::cmd_bench(cfg, std::cout);
        if (inspect->parsed()) return cli::cmd_inspect(cfg, std::cout);
        if (verify->parsed()) return cli::cmd_verify(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
