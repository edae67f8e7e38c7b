#include "vpy/driver.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "vpy/ast_text.hpp"
#include "vpy/codegen_dot.hpp"
#include "vpy/codegen_olympus.hpp"
#include "vpy/format.hpp"
#include "vpy/optimizer.hpp"
#include "vpy/parser.hpp"
#include "vpy/process.hpp"
#include "vpy/typeinfer.hpp"

#ifndef VPYC_DEFAULT_RUNTIME_DIR
#define VPYC_DEFAULT_RUNTIME_DIR "runtime"
#endif

namespace vpy {

Backend parse_backend(std::string_view name)
{
    if (name == "olympus")
        return Backend::Olympus;
    if (name == "dot")
        return Backend::Dot;
    if (name == "ast")
        return Backend::Ast;
    if (name == "merlin")
        fail(ErrorKind::UnsupportedBackend, {}, "backend 'merlin' is reserved and not implemented");
    fail(ErrorKind::UnsupportedBackend, {}, "unknown backend '" + std::string(name) + "'");
}

std::string_view backend_name(Backend b)
{
    switch (b) {
    case Backend::Olympus: return "olympus";
    case Backend::Dot: return "dot";
    case Backend::Ast: return "ast";
    }
    return "?";
}

OptLevel parse_opt(std::string_view name)
{
    if (name == "size" || name == "size-opt" || name == "s")
        return OptLevel::Size;
    if (name == "speed" || name == "speed-opt" || name == "3")
        return OptLevel::Speed;
    throw std::invalid_argument("unknown opt level '" + std::string(name) + "'");
}

std::string_view opt_name(OptLevel o)
{
    return o == OptLevel::Size ? "size" : "speed";
}

std::string default_runtime_dir()
{
    return VPYC_DEFAULT_RUNTIME_DIR;
}

std::string resolve_cc(const BuildConfig& cfg)
{
    if (!cfg.cc.empty())
        return cfg.cc;
    if (const char* env = std::getenv("VPYC_CC"); env && *env)
        return env;
    return "cc";
}

std::string resolve_runtime_dir(const BuildConfig& cfg)
{
    if (!cfg.runtime_dir.empty())
        return cfg.runtime_dir;
    if (const char* env = std::getenv("VPYC_RUNTIME"); env && *env)
        return env;
    return default_runtime_dir();
}

std::vector<std::string> opt_flags(OptLevel o)
{
    if (o == OptLevel::Size)
        return {"-Os"};
    return {"-O3"};
}

std::vector<std::string> toolchain_flags(const BuildConfig& cfg)
{
    std::vector<std::string> f = {"-std=gnu99", "-fwrapv", "-ffp-contract=off"};
    for (auto& o : opt_flags(cfg.opt))
        f.push_back(o);
    f.push_back("-DOLYMPUS_HEAP_BYTES=" + std::to_string(cfg.heap_bytes));
    if (cfg.compile.int_width == 64)
        f.push_back("-DOLYMPUS_INT64");
    if (cfg.compile.real32()) {
        f.push_back("-DOLYMPUS_REAL32");
        f.push_back("-fsingle-precision-constant");
    }
    if (!cfg.bounds)
        f.push_back("-DOLYMPUS_BOUNDS=0");
    f.push_back("-I" + resolve_runtime_dir(cfg));
    return f;
}

bool looks_like_oast(std::string_view text)
{
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    text.remove_prefix(i);
    if (text.substr(0, 7) != "(module")
        return false;
    return text.size() == 7 || text[7] == ' ' || text[7] == ')' || text[7] == ':' || text[7] == '\n';
}

NodePtr load_program(std::string_view text)
{
    if (looks_like_oast(text))
        return deserialize_ast(text);
    return parse_source(text);
}

int tree_phase(const AstNode& root)
{
    bool typed = false;
    bool lowered = false;
    walk(root, [&](const AstNode& n) {
        if (n.type)
            typed = true;
        if (n.kind == NodeKind::ForRange && n.native)
            lowered = true;
        return true;
    });
    if (!typed)
        return PhaseParse;
    return lowered ? PhaseOptimize : PhaseInfer;
}

static void require_frozen(const AstNode& root, int phase)
{
    auto diags = check_frozen(root);
    if (diags.empty())
        return;
    std::string msg = "check_frozen failed after phase " + std::to_string(phase) + ":";
    for (const auto& d : diags)
        msg += "\n  " + to_string(d);
    fail(ErrorKind::Internal, {}, msg);
}

void run_phases(AstNode& root, int from, int to, const BuildConfig& cfg)
{
    if (from < PhaseInfer && to >= PhaseInfer) {
        infer(root, cfg.compile);
        resolve_scopes(root);
        if (cfg.check)
            require_frozen(root, PhaseInfer);
    }
    if (from < PhaseOptimize && to >= PhaseOptimize) {
        fold_constants(root, cfg.compile);
        lower_for_range(root);
        if (cfg.check)
            require_frozen(root, PhaseOptimize);
    }
}

NodePtr compile_to_phase(std::string_view text, int to, const BuildConfig& cfg)
{
    NodePtr root = load_program(text);
    int from = looks_like_oast(text) ? tree_phase(*root) : PhaseParse;
    if (from < to)
        run_phases(*root, from, to, cfg);
    return root;
}

std::string emit_backend(const AstNode& root, const BuildConfig& cfg)
{
    switch (cfg.backend) {
    case Backend::Olympus: {
        OlympusOptions o;
        o.compile = cfg.compile;
        o.heap_bytes = cfg.heap_bytes;
        return emit_olympus(root, o);
    }
    case Backend::Dot: return emit_dot(root);
    case Backend::Ast: return serialize_ast(root);
    }
    return {};
}

std::string compile_in_process(std::string_view text, const BuildConfig& cfg)
{
    NodePtr root = compile_to_phase(text, PhaseOptimize, cfg);
    return emit_backend(*root, cfg);
}

std::vector<std::string> config_args(const BuildConfig& cfg)
{
    std::vector<std::string> a = {
        "--backend", std::string(backend_name(cfg.backend)),
        "--heap-bytes", std::to_string(cfg.heap_bytes),
        "--int-width", std::to_string(cfg.compile.int_width),
        "--real-width", std::to_string(cfg.compile.real_width),
    };
    if (cfg.check)
        a.push_back("--check");
    return a;
}

std::string compile_piped(std::string_view text, const BuildConfig& cfg, const std::string& vpyc)
{
    auto args = config_args(cfg);
    std::vector<std::vector<std::string>> stages;
    for (int phase = PhaseParse; phase <= PhaseOptimize; ++phase) {
        std::vector<std::string> s = {vpyc, "ast", "-", "--phase", std::to_string(phase)};
        s.insert(s.end(), args.begin(), args.end());
        stages.push_back(std::move(s));
    }
    std::vector<std::string> last = {vpyc, "compile", "-", "--emit", "source"};
    last.insert(last.end(), args.begin(), args.end());
    stages.push_back(std::move(last));
    ProcessResult r = run_pipeline(stages, std::string(text));
    if (r.exit_code != 0)
        fail(ErrorKind::Internal, {}, "piped pipeline failed (exit " + std::to_string(r.exit_code) + "):\n" + r.err);
    return r.out;
}

std::vector<std::string> build_command(const std::vector<std::string>& sources, const std::string& exe,
                                       const BuildConfig& cfg, bool with_runtime,
                                       const std::vector<std::string>& extra)
{
    std::vector<std::string> cmd = {resolve_cc(cfg)};
    if (with_runtime) {
        for (auto& f : toolchain_flags(cfg))
            cmd.push_back(f);
    } else {
        cmd.insert(cmd.end(), {"-std=gnu99", "-fwrapv", "-ffp-contract=off"});
        for (auto& o : opt_flags(cfg.opt))
            cmd.push_back(o);
    }
    for (auto& e : extra)
        cmd.push_back(e);
    for (auto& s : sources)
        cmd.push_back(s);
    if (with_runtime) {
        std::string rt = resolve_runtime_dir(cfg);
        cmd.push_back(rt + "/olympus_rt.c");
        cmd.push_back(rt + "/olympus_main.c");
    }
    cmd.insert(cmd.end(), {"-o", exe, "-lm"});
    return cmd;
}

static void run_toolchain(const std::vector<std::string>& cmd)
{
    ProcessResult r = run_process(cmd);
    if (r.exit_code != 0) {
        std::string msg = "command failed (exit " + std::to_string(r.exit_code) + "): " + join_command(cmd);
        if (!r.err.empty())
            msg += "\n" + r.err;
        if (!r.out.empty())
            msg += "\n" + r.out;
        fail(ErrorKind::Toolchain, {}, msg);
    }
}

void build_unit(const std::string& unit, const std::string& exe, const BuildConfig& cfg)
{
    TempDir tmp;
    std::string src = tmp.file("unit.c");
    write_file(src, unit);
    run_toolchain(build_command({src}, exe, cfg, true));
}

void build_native(const std::string& c_path, const std::string& exe, const BuildConfig& cfg,
                  const std::vector<std::string>& defines)
{
    std::vector<std::string> extra;
    for (auto& d : defines)
        extra.push_back("-D" + d);
    run_toolchain(build_command({c_path}, exe, cfg, false, extra));
}

RunResult run_executable(const std::string& exe, const std::string& input)
{
    ProcessResult p = run_process({exe}, input);
    if (!p.spawned)
        fail(ErrorKind::Toolchain, {}, "cannot execute " + exe);
    return {std::move(p.out), std::move(p.err), p.exit_code};
}

SegmentSizes parse_size_output(std::string_view out)
{
    std::istringstream in{std::string(out)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        SegmentSizes s;
        if (row >> s.text >> s.data >> s.bss)
            return s;
    }
    fail(ErrorKind::Toolchain, {}, "unrecognized size output:\n" + std::string(out));
}

SegmentSizes measure_sizes(const std::string& exe)
{
    const char* env = std::getenv("VPYC_SIZE");
    std::string tool = env && *env ? env : "size";
    std::vector<std::string> cmd = {tool, exe};
    ProcessResult r = run_process(cmd);
    if (r.exit_code != 0)
        fail(ErrorKind::Toolchain, {}, "command failed: " + join_command(cmd) + "\n" + r.err);
    return parse_size_output(r.out);
}

std::string diff_report(std::string_view expected, std::string_view actual)
{
    if (expected == actual)
        return {};
    auto split = [](std::string_view s) {
        std::vector<std::string_view> lines;
        size_t start = 0;
        while (start < s.size()) {
            size_t nl = s.find('\n', start);
            if (nl == std::string_view::npos) {
                lines.push_back(s.substr(start));
                break;
            }
            lines.push_back(s.substr(start, nl - start + 1));
            start = nl + 1;
        }
        return lines;
    };
    auto a = split(expected);
    auto b = split(actual);
    size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i])
        ++i;
    auto show = [](const std::vector<std::string_view>& v, size_t k) {
        if (k >= v.size())
            return std::string("<end of output>");
        return repr_string(std::string(v[k]));
    };
    return "line " + std::to_string(i + 1) + ": expected " + show(a, i) + ", got " + show(b, i);
}

}  // namespace vpy
