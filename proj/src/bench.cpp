#include "vpy/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "vpy/process.hpp"

#ifndef VPYC_BENCH_DIR
#define VPYC_BENCH_DIR "bench"
#endif

namespace vpy {

namespace {

struct Variant {
    std::string name;
    std::string source;  // .vpy or .c file name in the bench directory
    bool native = false;
};

struct Built {
    Variant variant;
    std::string exe;
    BenchRecord record;
};

std::vector<Variant> suite_variants(const std::string& suite)
{
    if (suite == "sieve")
        return {{"for", "sieve_for.vpy", false}, {"while", "sieve_while.vpy", false},
                {"native", "sieve_native.c", true}};
    if (suite == "linpack")
        return {{"olympus", "linpack.vpy", false}, {"native", "linpack_native.c", true}};
    throw std::invalid_argument("unknown bench suite '" + suite + "'");
}

std::vector<std::pair<std::string, std::string>> suite_ratios(const std::string& suite)
{
    if (suite == "sieve")
        return {{"for", "while"}, {"for", "native"}, {"while", "native"}};
    return {{"olympus", "native"}};
}

std::string resolve_bench_dir(const BenchOptions& o)
{
    if (!o.bench_dir.empty())
        return o.bench_dir;
    if (const char* env = std::getenv("VPYC_BENCH_DIR"); env && *env)
        return env;
    return default_bench_dir();
}

}  // namespace

std::string default_bench_dir()
{
    return VPYC_BENCH_DIR;
}

const BenchRecord* BenchReport::find(std::string_view suite, std::string_view variant, OptLevel opt) const
{
    for (const auto& r : records)
        if (r.suite == suite && r.variant == variant && r.opt == opt)
            return &r;
    return nullptr;
}

std::string output_digest(std::string_view output)
{
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : output) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double median(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

std::string set_parameter(std::string_view source, std::string_view name, int64_t value)
{
    std::regex line("^" + std::string(name) + " = -?[0-9]+$", std::regex::multiline);
    std::string src(source);
    if (!std::regex_search(src, line))
        throw std::invalid_argument("bench source has no line '" + std::string(name) + " = <int>'");
    return std::regex_replace(src, line, std::string(name) + " = " + std::to_string(value),
                              std::regex_constants::format_first_only);
}

BenchReport run_bench(const BenchOptions& opts, std::ostream* log)
{
    namespace fs = std::filesystem;
    std::vector<std::string> suites;
    for (const auto& s : opts.suites) {
        if (s == "all") {
            suites.push_back("sieve");
            suites.push_back("linpack");
        } else {
            suites.push_back(s);
        }
    }
    std::string dir = resolve_bench_dir(opts);
    BenchReport report;
    TempDir tmp;
    int serial = 0;

    for (const auto& suite : suites) {
        std::map<std::string, int64_t> params;
        BuildConfig cfg = opts.base;
        cfg.backend = Backend::Olympus;
        if (suite == "sieve") {
            params = {{"SIZE", opts.sieve_size}, {"ITERS", opts.sieve_iters}};
        } else {
            params = {{"N", opts.linpack_n}};
            int64_t n = opts.linpack_n;
            size_t need = static_cast<size_t>(n * n * 8 + n * 64 + 65536);
            cfg.heap_bytes = std::max(cfg.heap_bytes, need);
        }
        for (OptLevel opt : opts.opts) {
            cfg.opt = opt;
            std::vector<Built> built;
            for (const auto& v : suite_variants(suite)) {
                Built b;
                b.variant = v;
                b.exe = tmp.file(suite + "_" + v.name + "_" + std::to_string(serial++));
                std::string path = dir + "/" + v.source;
                if (log)
                    *log << "build " << suite << "/" << v.name << " (" << opt_name(opt) << ")\n" << std::flush;
                std::vector<std::string> cmd;
                if (v.native) {
                    std::vector<std::string> defs;
                    for (auto& [k, val] : params)
                        defs.push_back(k + "=" + std::to_string(val));
                    build_native(path, b.exe, cfg, defs);
                    std::vector<std::string> extra;
                    for (auto& d : defs)
                        extra.push_back("-D" + d);
                    cmd = build_command({path}, b.exe, cfg, false, extra);
                } else {
                    std::string src = read_file(path);
                    for (auto& [k, val] : params)
                        src = set_parameter(src, k, val);
                    build_unit(compile_in_process(src, cfg), b.exe, cfg);
                    cmd = build_command({"unit.c"}, b.exe, cfg, true);
                }
                BenchRecord& r = b.record;
                r.suite = suite;
                r.variant = v.name;
                r.opt = opt;
                r.params = params;
                r.config = cfg;
                r.config.cc = resolve_cc(cfg);
                r.config.runtime_dir = v.native ? std::string() : resolve_runtime_dir(cfg);
                // the recorded flags are the compiler options, without the
                // source and output paths
                for (size_t i = 1; i < cmd.size(); ++i) {
                    if (cmd[i] == "-o") {
                        ++i;
                        continue;
                    }
                    if (cmd[i].size() > 2 && cmd[i].ends_with(".c"))
                        continue;
                    r.flags.push_back(cmd[i]);
                }
                r.binary_bytes = fs::file_size(b.exe);
                r.sizes = measure_sizes(b.exe);
                built.push_back(std::move(b));
            }
            for (int rep = 0; rep < opts.reps; ++rep) {
                for (auto& b : built) {
                    auto t0 = std::chrono::steady_clock::now();
                    ProcessResult p = run_process({b.exe});
                    auto t1 = std::chrono::steady_clock::now();
                    BenchRecord& r = b.record;
                    r.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
                    if (rep == 0 || p.exit_code != 0) {
                        r.exit_status = p.exit_code;
                        r.output = p.out;
                        r.output_digest = output_digest(p.out);
                    }
                }
            }
            for (auto& b : built) {
                b.record.seconds_median = median(b.record.seconds);
                if (log)
                    *log << "ran " << suite << "/" << b.record.variant << " (" << opt_name(opt)
                         << "): median " << b.record.seconds_median << " s\n" << std::flush;
                report.records.push_back(b.record);
            }
            for (auto& [num, den] : suite_ratios(suite)) {
                const BenchRecord* a = report.find(suite, num, opt);
                const BenchRecord* b = report.find(suite, den, opt);
                BenchComparison c;
                c.suite = suite;
                c.opt = opt;
                c.numerator = num;
                c.denominator = den;
                if (!a || !b) {
                    c.note = "missing variant";
                } else if (a->exit_status != 0 || b->exit_status != 0) {
                    c.note = "nonzero exit status";
                } else if (a->output_digest != b->output_digest) {
                    c.note = "output mismatch: " + diff_report(b->output, a->output);
                } else if (b->seconds_median <= 0.0) {
                    c.note = "zero denominator";
                } else {
                    c.valid = true;
                    c.ratio = a->seconds_median / b->seconds_median;
                }
                report.comparisons.push_back(c);
            }
        }
    }
    return report;
}

std::string record_json(const BenchRecord& r)
{
    nlohmann::ordered_json j;
    j["type"] = "record";
    j["suite"] = r.suite;
    j["variant"] = r.variant;
    j["opt"] = opt_name(r.opt);
    j["seconds_median"] = r.seconds_median;
    j["size_text"] = r.sizes.text;
    j["size_data"] = r.sizes.data;
    j["size_zeroinit"] = r.sizes.bss;
    j["output_digest"] = r.output_digest;
    j["seconds"] = r.seconds;
    j["binary_bytes"] = r.binary_bytes;
    j["exit_status"] = r.exit_status;
    j["flags"] = r.flags;
    j["params"] = r.params;
    nlohmann::ordered_json c;
    c["cc"] = r.config.cc;
    c["heap_bytes"] = r.config.heap_bytes;
    c["int_width"] = r.config.compile.int_width;
    c["real_width"] = r.config.compile.real_width;
    c["bounds"] = r.config.bounds;
    if (!r.config.runtime_dir.empty())
        c["runtime_dir"] = r.config.runtime_dir;
    j["config"] = c;
    return j.dump();
}

std::string comparison_json(const BenchComparison& c)
{
    nlohmann::ordered_json j;
    j["type"] = "comparison";
    j["suite"] = c.suite;
    j["opt"] = opt_name(c.opt);
    j["numerator"] = c.numerator;
    j["denominator"] = c.denominator;
    j["valid"] = c.valid;
    if (c.valid)
        j["ratio"] = c.ratio;
    else
        j["note"] = c.note;
    return j.dump();
}

std::string format_table(const BenchReport& report)
{
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %-8s %-6s %12s %10s %8s %10s  %s\n", "suite", "variant", "opt",
                  "median_s", "text", "data", "zeroinit", "digest");
    out << line;
    for (const auto& r : report.records) {
        std::snprintf(line, sizeof line, "%-8s %-8s %-6s %12.6f %10llu %8llu %10llu  %s%s\n", r.suite.c_str(),
                      r.variant.c_str(), std::string(opt_name(r.opt)).c_str(), r.seconds_median,
                      static_cast<unsigned long long>(r.sizes.text), static_cast<unsigned long long>(r.sizes.data),
                      static_cast<unsigned long long>(r.sizes.bss), r.output_digest.c_str(),
                      r.exit_status ? (" exit " + std::to_string(r.exit_status)).c_str() : "");
        out << line;
    }
    if (!report.comparisons.empty())
        out << "\n";
    for (const auto& c : report.comparisons) {
        std::string label = c.suite + " " + c.numerator + "/" + c.denominator + " (" + std::string(opt_name(c.opt)) + ")";
        if (c.valid)
            std::snprintf(line, sizeof line, "%-32s %8.3f\n", label.c_str(), c.ratio);
        else
            std::snprintf(line, sizeof line, "%-32s  n/a: %s\n", label.c_str(), c.note.c_str());
        out << line;
    }
    return out.str();
}

}  // namespace vpy
