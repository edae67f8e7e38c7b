#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vpy/ast_text.hpp"
#include "vpy/bench.hpp"
#include "vpy/driver.hpp"
#include "vpy/process.hpp"

#include "json.hpp"

using namespace vpy;
using vpy_test::throws_kind;

TEST(Driver, BackendNames)
{
    EXPECT_EQ(parse_backend("olympus"), Backend::Olympus);
    EXPECT_EQ(parse_backend("dot"), Backend::Dot);
    EXPECT_EQ(parse_backend("ast"), Backend::Ast);
    EXPECT_TRUE(throws_kind([] { parse_backend("merlin"); }, ErrorKind::UnsupportedBackend));
    EXPECT_TRUE(throws_kind([] { parse_backend("llvm"); }, ErrorKind::UnsupportedBackend));
}

TEST(Driver, OptLevelMapsToOneFlagSet)
{
    EXPECT_EQ(opt_flags(OptLevel::Size), std::vector<std::string>{"-Os"});
    EXPECT_EQ(opt_flags(OptLevel::Speed), std::vector<std::string>{"-O3"});
    EXPECT_EQ(parse_opt("size-opt"), OptLevel::Size);
    EXPECT_EQ(parse_opt("speed"), OptLevel::Speed);
    EXPECT_THROW(parse_opt("fast"), std::invalid_argument);
}

TEST(Driver, ToolchainFlagsFollowConfig)
{
    BuildConfig c;
    c.heap_bytes = 24576;
    c.compile.int_width = 64;
    c.compile.real_width = 32;
    c.bounds = false;
    c.runtime_dir = "/rt";
    auto f = toolchain_flags(c);
    auto has = [&](const std::string& s) { return std::find(f.begin(), f.end(), s) != f.end(); };
    EXPECT_TRUE(has("-DOLYMPUS_HEAP_BYTES=24576"));
    EXPECT_TRUE(has("-DOLYMPUS_INT64"));
    EXPECT_TRUE(has("-DOLYMPUS_REAL32"));
    EXPECT_TRUE(has("-DOLYMPUS_BOUNDS=0"));
    EXPECT_TRUE(has("-I/rt"));
    EXPECT_TRUE(has("-Os"));
}

TEST(Driver, CompilerResolution)
{
    BuildConfig c;
    c.cc = "/opt/cc";
    EXPECT_EQ(resolve_cc(c), "/opt/cc");
    setenv("VPYC_CC", "/env/cc", 1);
    EXPECT_EQ(resolve_cc(BuildConfig{}), "/env/cc");
    unsetenv("VPYC_CC");
    EXPECT_EQ(resolve_cc(BuildConfig{}), "cc");
}

TEST(Driver, EmitAstAtPhaseTwoHasNoPlaceholders)
{
    auto tree = compile_to_phase("a = 3\nb = a * 2\n", PhaseInfer, BuildConfig{});
    std::string text = serialize_ast(*tree);
    EXPECT_EQ(text.find("?"), std::string::npos) << text;
    EXPECT_EQ(tree_phase(*tree), PhaseInfer);
}

TEST(Driver, PhaseDetection)
{
    EXPECT_EQ(tree_phase(*parse_source("a = 1\n")), PhaseParse);
    auto t = compile_to_phase("for i in range(3):\n    print(i)\n", PhaseInfer, BuildConfig{});
    EXPECT_EQ(tree_phase(*t), PhaseInfer);
    auto l = compile_to_phase("for i in range(3):\n    print(i)\n", PhaseOptimize, BuildConfig{});
    EXPECT_EQ(tree_phase(*l), PhaseOptimize);
    EXPECT_TRUE(looks_like_oast("  (module\n"));
    EXPECT_TRUE(looks_like_oast("(module)"));
    EXPECT_FALSE(looks_like_oast("(modules)"));
    EXPECT_FALSE(looks_like_oast("module = 1\n"));
}

TEST(Driver, PhasesResumeFromOastText)
{
    const char* src = "x = 2 + 3\nfor i in range(x):\n    print(i * x)\n";
    BuildConfig cfg;
    std::string direct = compile_in_process(src, cfg);
    for (int stop : {PhaseParse, PhaseInfer, PhaseOptimize}) {
        std::string oast = serialize_ast(*compile_to_phase(src, stop, cfg));
        EXPECT_EQ(compile_in_process(oast, cfg), direct) << stop;
    }
}

TEST(Driver, CheckFlagRunsFrozenCheck)
{
    BuildConfig cfg;
    cfg.check = true;
    EXPECT_NO_THROW(compile_in_process("a = 1\nprint(a + 2)\n", cfg));
}

TEST(Driver, SizeOutputParsing)
{
    auto s = parse_size_output("   text\t   data\t    bss\t    dec\t    hex\tfilename\n"
                               "  13805\t    808\t9700008\t9714621\t943b3d\tprog\n");
    EXPECT_EQ(s.text, 13805u);
    EXPECT_EQ(s.data, 808u);
    EXPECT_EQ(s.bss, 9700008u);
    EXPECT_TRUE(throws_kind([] { parse_size_output("garbage\n"); }, ErrorKind::Toolchain));
}

TEST(Driver, DiffReport)
{
    EXPECT_EQ(diff_report("a\nb\n", "a\nb\n"), "");
    EXPECT_EQ(diff_report("a\nb\n", "a\nc\n"), "line 2: expected 'b\\n', got 'c\\n'");
    EXPECT_EQ(diff_report("a\n", "a\nz\n"), "line 2: expected <end of output>, got 'z\\n'");
}

TEST(Process, CapturesStreamsAndStatus)
{
    auto r = run_process({"sh", "-c", "cat; echo err >&2; exit 7"}, "hello");
    EXPECT_EQ(r.out, "hello");
    EXPECT_EQ(r.err, "err\n");
    EXPECT_EQ(r.exit_code, 7);
    auto missing = run_process({"/nonexistent/tool"});
    EXPECT_FALSE(missing.spawned);
    EXPECT_NE(missing.exit_code, 0);
}

TEST(Process, PipelineConnectsStages)
{
    auto r = run_pipeline({{"tr", "a-z", "A-Z"}, {"rev"}}, "abc\n");
    EXPECT_EQ(r.out, "CBA\n");
    EXPECT_EQ(r.exit_code, 0);
}

TEST(Process, LargeInputDoesNotDeadlock)
{
    std::string big(1 << 20, 'x');
    auto r = run_process({"cat"}, big);
    EXPECT_EQ(r.out.size(), big.size());
}

TEST(Bench, DigestAndMedian)
{
    EXPECT_EQ(output_digest(""), "cbf29ce484222325");
    EXPECT_EQ(output_digest("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}

TEST(Bench, ParameterSubstitution)
{
    std::string src = "ITERS = 10\nSIZE = 8190\nsize = SIZE\n";
    std::string out = set_parameter(set_parameter(src, "SIZE", 4095), "ITERS", 1);
    EXPECT_EQ(out, "ITERS = 1\nSIZE = 4095\nsize = SIZE\n");
    EXPECT_THROW(set_parameter(src, "N", 5), std::invalid_argument);
}

TEST(Bench, RecordSchema)
{
    BenchRecord r;
    r.suite = "sieve";
    r.variant = "for";
    r.opt = OptLevel::Speed;
    r.seconds = {0.5, 0.25, 0.75};
    r.seconds_median = 0.5;
    r.sizes = {100, 20, 8000000};
    r.output_digest = output_digest("1899\n");
    r.flags = {"-O3"};
    r.config.cc = "cc";
    auto j = nlohmann::json::parse(record_json(r));
    for (const char* key : {"suite", "variant", "opt", "seconds_median", "size_text", "size_data", "size_zeroinit",
                            "output_digest", "flags", "exit_status", "config"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["opt"], "speed");
    EXPECT_EQ(j["size_zeroinit"], 8000000);
    EXPECT_EQ(j["config"]["cc"], "cc");

    BenchComparison c;
    c.suite = "sieve";
    c.numerator = "for";
    c.denominator = "while";
    c.note = "output mismatch";
    auto jc = nlohmann::json::parse(comparison_json(c));
    EXPECT_FALSE(jc["valid"].get<bool>());
    EXPECT_FALSE(jc.contains("ratio"));
}
