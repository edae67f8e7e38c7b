#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vpy/driver.hpp"

namespace vpy {

struct BenchOptions {
    // sieve, linpack or all.
    std::vector<std::string> suites = {"sieve"};
    std::vector<OptLevel> opts = {OptLevel::Size, OptLevel::Speed};
    int reps = 5;
    int64_t sieve_size = 8190;
    int64_t sieve_iters = 3000;
    int64_t linpack_n = 50;
    BuildConfig base;
    std::string bench_dir;  // empty: $VPYC_BENCH_DIR, then the build default
};

struct BenchRecord {
    std::string suite;    // sieve | linpack
    std::string variant;  // for | while | olympus | native
    OptLevel opt = OptLevel::Size;
    std::map<std::string, int64_t> params;
    std::vector<double> seconds;
    double seconds_median = 0.0;
    uint64_t binary_bytes = 0;
    SegmentSizes sizes;
    std::vector<std::string> flags;
    int exit_status = 0;
    std::string output_digest;
    std::string output;
    BuildConfig config;
};

struct BenchComparison {
    std::string suite;
    OptLevel opt = OptLevel::Size;
    std::string numerator;
    std::string denominator;
    double ratio = 0.0;
    bool valid = false;  // both runs succeeded with identical output
    std::string note;
};

struct BenchReport {
    std::vector<BenchRecord> records;
    std::vector<BenchComparison> comparisons;

    const BenchRecord* find(std::string_view suite, std::string_view variant, OptLevel opt) const;
};

std::string default_bench_dir();

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string output_digest(std::string_view output);

double median(std::vector<double> v);

// Replaces the value of the top-level line `NAME = <int>`.
std::string set_parameter(std::string_view source, std::string_view name, int64_t value);

// Builds every variant of the selected suites at each opt level and runs each
// `reps` times, interleaving variants within a repetition. Progress lines go
// to `log` when given.
BenchReport run_bench(const BenchOptions& opts, std::ostream* log = nullptr);

std::string record_json(const BenchRecord& r);
std::string comparison_json(const BenchComparison& c);
std::string format_table(const BenchReport& report);

}  // namespace vpy
