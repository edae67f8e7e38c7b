// Acceptance report: one PASS/FAIL line per criterion. Exit status is
// nonzero when any row fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dot_check.hpp"
#include "sieve_oracle.hpp"
#include "vpy/ast.hpp"
#include "vpy/ast_text.hpp"
#include "vpy/bench.hpp"
#include "vpy/codegen_dot.hpp"
#include "vpy/codegen_olympus.hpp"
#include "vpy/diagnostics.hpp"
#include "vpy/driver.hpp"
#include "vpy/oracle.hpp"
#include "vpy/process.hpp"
#include "vpy/typeinfer.hpp"

namespace fs = std::filesystem;
using namespace vpy;

namespace {

struct Row {
    std::string id;
    bool primary = true;
    std::string title;
    std::function<std::string()> check;  // detail text, throws Failed on failure
};

struct Failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Failed(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Program {
    std::string name;
    std::string source;
    std::string expected;
    int expected_exit = 0;
};

std::vector<Program> corpus()
{
    std::vector<Program> out;
    for (auto& e : fs::directory_iterator(VPY_CORPUS_DIR)) {
        if (e.path().extension() != ".vpy")
            continue;
        Program p;
        p.name = e.path().stem().string();
        p.source = read_file(e.path().string());
        auto base = e.path();
        p.expected = read_file(base.replace_extension(".expected").string());
        if (fs::exists(base.replace_extension(".exit")))
            p.expected_exit = std::stoi(read_file(base.string()));
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.name < b.name; });
    return out;
}

RunResult oracle_at(const std::string& source, int phase, const BuildConfig& cfg)
{
    auto tree = compile_to_phase(source, phase, cfg);
    OracleOptions o;
    o.compile = cfg.compile;
    o.heap_bytes = cfg.heap_bytes;
    return interpret(*tree, o);
}

RunResult build_and_run(const std::string& source, const BuildConfig& cfg, const std::string& dir,
                        const std::string& name)
{
    std::string exe = dir + "/" + name;
    build_unit(compile_in_process(source, cfg), exe, cfg);
    return run_executable(exe);
}

std::string sieve_source(const std::string& file, int64_t size)
{
    return set_parameter(set_parameter(read_file(std::string(VPY_BENCH_DIR) + "/" + file), "SIZE", size), "ITERS",
                         1);
}

bool has_trimmed_lines(const std::string& unit, const std::vector<std::string>& block)
{
    std::vector<std::string> lines;
    std::istringstream in(unit);
    std::string l;
    while (std::getline(in, l)) {
        size_t b = l.find_first_not_of(' ');
        lines.push_back(b == std::string::npos ? "" : l.substr(b));
    }
    for (size_t i = 0; i + block.size() <= lines.size(); ++i)
        if (std::equal(block.begin(), block.end(), lines.begin() + static_cast<long>(i)))
            return true;
    return false;
}

std::vector<double> numbers(const std::string& text)
{
    std::vector<double> out;
    std::istringstream in(text);
    double v;
    while (in >> v)
        out.push_back(v);
    return out;
}

std::string linpack_row(int n, const std::string& dir)
{
    std::string src = set_parameter(read_file(std::string(VPY_BENCH_DIR) + "/linpack.vpy"), "N", n);
    BuildConfig cfg;
    cfg.opt = OptLevel::Speed;
    cfg.heap_bytes = std::max<size_t>(cfg.heap_bytes, static_cast<size_t>(n) * n * 8 + n * 64 + 65536);
    auto t0 = std::chrono::steady_clock::now();
    auto compiled = build_and_run(src, cfg, dir, "linpack" + std::to_string(n));
    double t_compiled = seconds_since(t0);
    require(compiled.exit_code == 0, "compiled exit " + std::to_string(compiled.exit_code) + ": " + compiled.err);
    t0 = std::chrono::steady_clock::now();
    auto oracle = oracle_at(src, PhaseOptimize, cfg);
    double t_oracle = seconds_since(t0);
    require(oracle.exit_code == 0, "oracle exit " + std::to_string(oracle.exit_code));
    auto c = numbers(compiled.out);
    auto o = numbers(oracle.out);
    require(c.size() == 5 && o.size() == 5, "unexpected output shape: " + compiled.out);
    require(c[0] == n, "first field is not n");
    double worst = 0.0;
    for (size_t i = 0; i < c.size(); ++i) {
        double scale = std::max(1.0, std::fabs(o[i]));
        worst = std::max(worst, std::fabs(c[i] - o[i]) / scale);
    }
    require(c[1] < 10.0, "normalized residual " + std::to_string(c[1]) + " >= 10");
    require(worst <= 1e-9, "compiled vs oracle differ by " + std::to_string(worst));
    std::ostringstream d;
    d << "n=" << n << " residual " << c[1] << ", max rel diff vs oracle " << worst << " (compiled "
      << fixed(t_compiled, 1) << "s, oracle " << fixed(t_oracle, 1) << "s)";
    return d.str();
}

}  // namespace

int main()
{
    TempDir tmp;
    const std::string dir = tmp.path();
    const auto programs = corpus();

    std::vector<Row> rows;

    rows.push_back({"P1", true, "corpus oracle == compiled", [&] {
                        auto t0 = std::chrono::steady_clock::now();
                        require(programs.size() >= 30, "only " + std::to_string(programs.size()) + " programs");
                        BuildConfig cfg;
                        for (auto& p : programs) {
                            auto o = oracle_at(p.source, PhaseOptimize, cfg);
                            auto c = build_and_run(p.source, cfg, dir, p.name);
                            require(o.out == p.expected && o.exit_code == p.expected_exit,
                                    p.name + ": oracle disagrees with expected file: " +
                                        diff_report(p.expected, o.out));
                            require(c.out == o.out, p.name + ": " + diff_report(o.out, c.out));
                            require(c.exit_code == o.exit_code, p.name + ": exit " + std::to_string(c.exit_code) +
                                                                    " vs oracle " + std::to_string(o.exit_code));
                        }
                        double t = seconds_since(t0);
                        require(t < 120.0, "took " + fixed(t, 1) + "s");
                        return std::to_string(programs.size()) + " programs, stdout and exit status equal, " +
                               fixed(t, 1) + "s";
                    }});

    rows.push_back({"P2", true, "sieve counts", [&] {
                        std::string detail;
                        for (auto [size, want] : {std::pair<int64_t, int>{8190, 1899}, {4095, 1027}}) {
                            int brute = vpy_test::brute_force_sieve_count(static_cast<int>(size));
                            require(brute == want, "brute force gives " + std::to_string(brute));
                            for (const char* f : {"sieve_for.vpy", "sieve_while.vpy"}) {
                                auto r = build_and_run(sieve_source(f, size), BuildConfig{}, dir, "sieve");
                                require(r.out == std::to_string(brute) + "\n",
                                        std::string(f) + " size " + std::to_string(size) + " printed " + r.out);
                            }
                            detail += (detail.empty() ? "" : ", ") + std::to_string(size) + " -> " +
                                      std::to_string(brute);
                        }
                        return detail + " (for and while, brute force agrees)";
                    }});

    rows.push_back({"P3", true, "golden mnemonics", [&] {
                        auto emit_file = [](const std::string& path) {
                            return compile_in_process(read_file(path), BuildConfig{});
                        };
                        std::string golden = VPY_GOLDEN_DIR;
                        std::string bench = VPY_BENCH_DIR;
                        struct Case {
                            std::string file;
                            std::vector<std::string> lines;
                        };
                        std::vector<Case> cases = {
                            {golden + "/object_access.vpy", {"STCR(ADDRF(1,2),4.3);"}},
                            {golden + "/element_store.vpy", {"STAI(ADDRL(1),LDI(ADDRL(0)),42);"}},
                            {bench + "/sieve_for.vpy",
                             {"FOR($iter_i$,0,LDI(ADDRL(2)),1)", "STAI(ADDRL(4),$iter_i$,TRUE);", "END"}},
                            {bench + "/sieve_while.vpy",
                             {"WHILE((LDI(ADDRL(10))<LDI(ADDRL(2))))", "STAI(ADDRL(4),LDI(ADDRL(10)),TRUE);",
                              "STI(ADDRL(10),(LDI(ADDRL(10))+1));", "END"}},
                            {golden + "/deep_nonlocal.vpy", {"STR(ADDRF(4,1),10.0);"}},
                        };
                        for (auto& c : cases)
                            require(has_trimmed_lines(emit_file(c.file), c.lines),
                                    fs::path(c.file).filename().string() + " lacks " + c.lines[0]);
                        return std::to_string(cases.size()) + " shapes found";
                    }});

    rows.push_back({"P4", true, "speed-opt sieve ratios", [&] {
                        BenchOptions o;
                        o.suites = {"sieve"};
                        o.opts = {OptLevel::Speed};
                        o.reps = 5;
                        auto report = run_bench(o);
                        const BenchComparison* fw = nullptr;
                        const BenchComparison* fn = nullptr;
                        for (auto& c : report.comparisons) {
                            if (c.numerator == "for" && c.denominator == "while")
                                fw = &c;
                            if (c.numerator == "for" && c.denominator == "native")
                                fn = &c;
                        }
                        require(fw && fn, "comparison rows missing");
                        require(fw->valid && fn->valid, "invalid comparison: " + fw->note + fn->note);
                        auto* rf = report.find("sieve", "for", OptLevel::Speed);
                        auto* rw = report.find("sieve", "while", OptLevel::Speed);
                        auto* rn = report.find("sieve", "native", OptLevel::Speed);
                        std::string detail = "for " + fixed(rf->seconds_median, 4) + "s, while " +
                                             fixed(rw->seconds_median, 4) + "s, native " +
                                             fixed(rn->seconds_median, 4) + "s; for/while " + fixed(fw->ratio, 3) +
                                             ", for/native " + fixed(fn->ratio, 3);
                        require(fw->ratio < 1.0, detail);
                        require(fn->ratio <= 3.0, detail);
                        return detail;
                    }});

    rows.push_back({"P5", true, "frozen trees and ISA-only units", [&] {
                        BuildConfig cfg;
                        size_t units = 0;
                        std::vector<std::string> sources;
                        for (auto& p : programs)
                            sources.push_back(p.source);
                        for (const char* f : {"sieve_for.vpy", "sieve_while.vpy", "linpack.vpy"})
                            sources.push_back(read_file(std::string(VPY_BENCH_DIR) + "/" + f));
                        for (auto& src : sources) {
                            for (int phase : {PhaseInfer, PhaseOptimize}) {
                                auto tree = compile_to_phase(src, phase, cfg);
                                auto diags = check_frozen(*tree);
                                require(diags.empty(), "check_frozen: " + (diags.empty() ? "" : diags[0].message));
                            }
                            auto findings = scan_emitted(compile_in_process(src, cfg));
                            require(findings.empty(), "non-ISA token '" +
                                                          (findings.empty() ? "" : findings[0].token) + "'");
                            ++units;
                        }
                        return std::to_string(units) + " programs frozen at phases 2 and 3, units clean";
                    }});

    rows.push_back({"P6", true, "oracle before == after lowering", [&] {
                        BuildConfig cfg;
                        size_t loops = 0;
                        for (auto& p : programs) {
                            auto pre = oracle_at(p.source, PhaseInfer, cfg);
                            auto post = oracle_at(p.source, PhaseOptimize, cfg);
                            require(pre.out == post.out && pre.exit_code == post.exit_code,
                                    p.name + ": " + diff_report(pre.out, post.out));
                            if (p.source.find("in range(") != std::string::npos)
                                ++loops;
                        }
                        return std::to_string(programs.size()) + " programs (" + std::to_string(loops) +
                               " with range loops)";
                    }});

    rows.push_back({"P7", true, "in-process == piped .oast", [&] {
                        size_t compared = 0;
                        for (Backend b : {Backend::Olympus, Backend::Dot, Backend::Ast}) {
                            BuildConfig cfg;
                            cfg.backend = b;
                            for (auto& p : programs) {
                                std::string direct = compile_in_process(p.source, cfg);
                                std::string piped = compile_piped(p.source, cfg, VPYC_EXE);
                                require(direct == piped, p.name + " (" + std::string(backend_name(b)) +
                                                             "): " + diff_report(direct, piped));
                                ++compared;
                            }
                        }
                        return std::to_string(compared) + " outputs byte-identical across 4 processes";
                    }});

    rows.push_back({"P8", true, "DOT validity and counts", [&] {
                        BuildConfig cfg;
                        cfg.backend = Backend::Dot;
                        size_t total = 0;
                        for (auto& p : programs) {
                            for (int phase : {PhaseParse, PhaseOptimize}) {
                                auto tree = compile_to_phase(p.source, phase, cfg);
                                auto s = vpy_test::check_dot(emit_dot(*tree));
                                size_t n = count_nodes(*tree);
                                require(s.ok, p.name + ": " + s.error);
                                require(s.nodes.size() == n && s.node_statements == n,
                                        p.name + ": " + std::to_string(s.nodes.size()) + " nodes, tree has " +
                                            std::to_string(n));
                                require(s.edges.size() == n - 1, p.name + ": " + std::to_string(s.edges.size()) +
                                                                     " edges for " + std::to_string(n) + " nodes");
                                total += n;
                            }
                        }
                        return std::to_string(programs.size() * 2) + " graphs, " + std::to_string(total) +
                               " nodes, edges == nodes - 1";
                    }});

    rows.push_back({"S1", false, "heap property suite", [&] {
                        auto r = run_process({HEAP_PROPERTY_EXE});
                        require(r.exit_code == 0, r.out + r.err);
                        std::string line = r.out.substr(0, r.out.find('\n'));
                        return line;
                    }});

    rows.push_back({"S2", false, "LINPACK n=50", [&] { return linpack_row(50, dir); }});
    rows.push_back({"S3", false, "LINPACK n=1000", [&] { return linpack_row(1000, dir); }});

    rows.push_back({"S4", false, "segment sizes by heap profile", [&] {
                        std::string src = "print(1)\n";
                        std::string detail;
                        for (size_t heap : {size_t{8388608}, size_t{24576}}) {
                            BuildConfig cfg;
                            cfg.heap_bytes = heap;
                            std::string exe = dir + "/size" + std::to_string(heap);
                            build_unit(compile_in_process(src, cfg), exe, cfg);
                            auto s = measure_sizes(exe);
                            if (heap == 8388608)
                                require(s.bss >= 8000000, "8MB bss " + std::to_string(s.bss));
                            else
                                require(s.bss >= 24576 && s.bss <= 40960, "24KB bss " + std::to_string(s.bss));
                            detail += (detail.empty() ? "" : ", ") + std::to_string(heap) + " heap -> bss " +
                                      std::to_string(s.bss);
                        }
                        return detail;
                    }});

    int failures = 0;
    int primary_failures = 0;
    for (auto& row : rows) {
        std::string status = "PASS";
        std::string detail;
        auto t0 = std::chrono::steady_clock::now();
        try {
            detail = row.check();
        } catch (const std::exception& e) {
            status = "FAIL";
            detail = e.what();
        }
        if (status == "FAIL") {
            ++failures;
            if (row.primary)
                ++primary_failures;
        }
        std::cout << status << " " << row.id << " " << row.title << ": " << detail << " [" << fixed(seconds_since(t0), 1)
                  << "s]" << std::endl;
    }
    std::cout << (rows.size() - static_cast<size_t>(failures)) << "/" << rows.size() << " rows pass ("
              << primary_failures << " primary failures)" << std::endl;
    return failures ? 1 : 0;
}
