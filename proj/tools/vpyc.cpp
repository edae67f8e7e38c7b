#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "vpy/ast_text.hpp"
#include "vpy/bench.hpp"
#include "vpy/driver.hpp"
#include "vpy/oracle.hpp"
#include "vpy/process.hpp"

using namespace vpy;

namespace {

struct CommonFlags {
    std::string backend = "olympus";
    std::string opt = "size";
    size_t heap_bytes = 8388608;
    int int_width = 32;
    int real_width = 64;
    std::string bounds = "on";
    bool no_bounds_check = false;
    std::string cc;
    std::string runtime;
    bool check = false;

    void attach(CLI::App* app)
    {
        app->add_option("--backend", backend, "olympus, dot or ast")->capture_default_str();
        app->add_option("--opt", opt, "size or speed")->capture_default_str();
        app->add_option("--heap-bytes", heap_bytes, "runtime heap size")->capture_default_str();
        app->add_option("--int-width", int_width)->check(CLI::IsMember({32, 64}))->capture_default_str();
        app->add_option("--real-width", real_width)->check(CLI::IsMember({32, 64}))->capture_default_str();
        app->add_option("--bounds", bounds)->check(CLI::IsMember({"on", "off"}))->capture_default_str();
        app->add_flag("--no-bounds-check", no_bounds_check, "same as --bounds off");
        app->add_option("--cc", cc, "C toolchain (default $VPYC_CC, then cc)");
        app->add_option("--runtime", runtime, "Olympus runtime directory");
        app->add_flag("--check", check, "verify frozen typing after phases 2 and 3");
    }

    BuildConfig config() const
    {
        BuildConfig c;
        c.backend = parse_backend(backend);
        c.opt = parse_opt(opt);
        c.heap_bytes = heap_bytes;
        c.compile.int_width = int_width;
        c.compile.real_width = real_width;
        c.bounds = bounds == "on" && !no_bounds_check;
        c.cc = cc;
        c.runtime_dir = runtime;
        c.check = check;
        return c;
    }
};

std::string read_input(const std::string& path)
{
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    return read_file(path);
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
    } else {
        write_file(path, text);
    }
}

std::string default_exe_name(const std::string& input)
{
    if (input == "-")
        return "a.out";
    return std::filesystem::path(input).stem().string();
}

int report_run(const RunResult& r)
{
    std::fwrite(r.out.data(), 1, r.out.size(), stdout);
    std::fflush(stdout);
    std::fwrite(r.err.data(), 1, r.err.size(), stderr);
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"vpyc: ahead-of-time compiler for the vPython subset"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::string emit = "exe";
    int phase = 3;

    CommonFlags compile_flags;
    auto* compile = app.add_subcommand("compile", "run phases 1-4 and build an executable");
    compile->add_option("input", input, ".vpy or .oast file, - for stdin")->required();
    compile->add_option("-o,--output", output, "output path");
    compile->add_option("--emit", emit, "exe, source or ast")
        ->check(CLI::IsMember({"exe", "source", "ast"}))
        ->capture_default_str();
    compile->add_option("--phase", phase, "last phase for --emit ast")
        ->check(CLI::IsMember({1, 2, 3}))
        ->capture_default_str();
    compile_flags.attach(compile);

    CommonFlags ast_flags;
    auto* ast = app.add_subcommand("ast", "advance a program to a phase and write it as .oast");
    ast->add_option("input", input, ".vpy or .oast file, - for stdin")->required();
    ast->add_option("-o,--output", output, "output path");
    ast->add_option("--phase", phase)->check(CLI::IsMember({1, 2, 3}))->capture_default_str();
    ast_flags.attach(ast);

    CommonFlags run_flags;
    auto* run = app.add_subcommand("run", "compile, build and execute; --check also compares with the oracle");
    run->add_option("input", input)->required();
    run_flags.attach(run);

    CommonFlags size_flags;
    bool size_json = false;
    auto* size = app.add_subcommand("size", "build and report segment sizes");
    size->add_option("input", input)->required();
    size->add_flag("--json", size_json, "print one JSON line");
    size_flags.attach(size);

    CommonFlags bench_flags;
    BenchOptions bench_opts;
    std::vector<std::string> bench_levels;
    std::string json_path = "vpyc-bench.jsonl";
    auto* bench = app.add_subcommand("bench", "build and time the benchmark suites");
    bench->add_option("--suite", bench_opts.suites, "sieve, linpack or all")->capture_default_str();
    bench->add_option("--reps", bench_opts.reps)->capture_default_str();
    bench->add_option("--sieve-size", bench_opts.sieve_size)->capture_default_str();
    bench->add_option("--sieve-iters", bench_opts.sieve_iters)->capture_default_str();
    bench->add_option("--linpack-n", bench_opts.linpack_n)->capture_default_str();
    bench->add_option("--bench-dir", bench_opts.bench_dir, "benchmark sources");
    bench->add_option("--levels", bench_levels, "opt levels to run (default size and speed)");
    bench->add_option("--json", json_path, "JSON lines output, - for stdout")->capture_default_str();
    bench_flags.attach(bench);

    CLI11_PARSE(app, argc, argv);

    std::string label = input.empty() || input == "-" ? "<stdin>" : input;
    try {
        if (*compile) {
            BuildConfig cfg = compile_flags.config();
            std::string text = read_input(input);
            if (emit == "ast") {
                write_output(output, serialize_ast(*compile_to_phase(text, phase, cfg)));
                return 0;
            }
            std::string unit = compile_in_process(text, cfg);
            if (cfg.backend != Backend::Olympus || emit == "source") {
                write_output(output, unit);
                return 0;
            }
            build_unit(unit, output.empty() ? default_exe_name(input) : output, cfg);
            return 0;
        }
        if (*ast) {
            BuildConfig cfg = ast_flags.config();
            write_output(output, serialize_ast(*compile_to_phase(read_input(input), phase, cfg)));
            return 0;
        }
        if (*run) {
            BuildConfig cfg = run_flags.config();
            cfg.backend = Backend::Olympus;
            std::string text = read_input(input);
            NodePtr tree = compile_to_phase(text, PhaseOptimize, cfg);
            TempDir tmp;
            std::string exe = tmp.file("prog");
            build_unit(emit_backend(*tree, cfg), exe, cfg);
            ProcessResult p = input == "-" ? run_process({exe}) : run_process_inherit_stdin({exe});
            if (!p.spawned)
                fail(ErrorKind::Toolchain, {}, "cannot execute " + exe);
            RunResult r{std::move(p.out), std::move(p.err), p.exit_code};
            int code = report_run(r);
            if (run_flags.check) {
                OracleOptions oo;
                oo.compile = cfg.compile;
                oo.heap_bytes = cfg.heap_bytes;
                RunResult want = interpret(*tree, oo);
                std::string diff = diff_report(want.out, r.out);
                if (!diff.empty() || want.exit_code != r.exit_code) {
                    std::fprintf(stderr, "check: compiled program disagrees with the oracle\n");
                    if (!diff.empty())
                        std::fprintf(stderr, "check: stdout %s\n", diff.c_str());
                    if (want.exit_code != r.exit_code)
                        std::fprintf(stderr, "check: exit status expected %d, got %d\n", want.exit_code, r.exit_code);
                    return code ? code : 1;
                }
            }
            return code;
        }
        if (*size) {
            BuildConfig cfg = size_flags.config();
            cfg.backend = Backend::Olympus;
            TempDir tmp;
            std::string exe = tmp.file("prog");
            build_unit(compile_in_process(read_input(input), cfg), exe, cfg);
            SegmentSizes s = measure_sizes(exe);
            bool heap_dominates = s.bss >= cfg.heap_bytes && cfg.heap_bytes * 2 > s.bss;
            if (size_json) {
                std::printf("{\"input\":\"%s\",\"heap_bytes\":%zu,\"size_text\":%llu,\"size_data\":%llu,"
                            "\"size_zeroinit\":%llu,\"heap_dominates_zeroinit\":%s}\n",
                            label.c_str(), cfg.heap_bytes, static_cast<unsigned long long>(s.text),
                            static_cast<unsigned long long>(s.data), static_cast<unsigned long long>(s.bss),
                            heap_dominates ? "true" : "false");
            } else {
                std::printf("%10s %10s %10s  %s\n", "text", "data", "bss", "file");
                std::printf("%10llu %10llu %10llu  %s\n", static_cast<unsigned long long>(s.text),
                            static_cast<unsigned long long>(s.data), static_cast<unsigned long long>(s.bss),
                            label.c_str());
                if (heap_dominates)
                    std::printf("note: the %zu-byte heap array accounts for most of bss\n", cfg.heap_bytes);
            }
            return 0;
        }
        if (*bench) {
            bench_opts.base = bench_flags.config();
            if (!bench_levels.empty()) {
                bench_opts.opts.clear();
                for (auto& l : bench_levels)
                    bench_opts.opts.push_back(parse_opt(l));
            }
            BenchReport report = run_bench(bench_opts, &std::cerr);
            std::string lines;
            for (auto& r : report.records)
                lines += record_json(r) + "\n";
            for (auto& c : report.comparisons)
                lines += comparison_json(c) + "\n";
            std::string table = format_table(report);
            if (json_path == "-") {
                std::fputs(lines.c_str(), stdout);
                std::fputs(table.c_str(), stderr);
            } else {
                write_file(json_path, lines);
                std::fputs(table.c_str(), stdout);
            }
            return 0;
        }
    } catch (const CompileError& e) {
        std::fprintf(stderr, "%s:%s\n", label.c_str(),
                     e.loc().valid() ? e.what() : (std::string(" ") + e.what()).c_str());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "vpyc: %s\n", e.what());
        return 1;
    }
    return 0;
}
