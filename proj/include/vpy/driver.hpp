#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vpy/ast.hpp"
#include "vpy/options.hpp"
#include "vpy/oracle.hpp"

namespace vpy {

enum class Backend { Olympus, Dot, Ast };
enum class OptLevel { Size, Speed };

// Throws UnsupportedBackend for anything but olympus, dot and ast.
Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend b);

// Accepts size, speed, size-opt, speed-opt, s and 3.
OptLevel parse_opt(std::string_view name);
std::string_view opt_name(OptLevel o);

struct BuildConfig {
    Backend backend = Backend::Olympus;
    OptLevel opt = OptLevel::Size;
    size_t heap_bytes = 8388608;
    CompileOptions compile;
    bool bounds = true;
    std::string cc;           // empty: $VPYC_CC, then cc
    std::string runtime_dir;  // empty: $VPYC_RUNTIME, then the build default
    bool check = false;       // run check_frozen after phases 2 and 3
};

// The default runtime directory baked in at build time.
std::string default_runtime_dir();
std::string resolve_cc(const BuildConfig& cfg);
std::string resolve_runtime_dir(const BuildConfig& cfg);

// The one flag set an opt level maps to.
std::vector<std::string> opt_flags(OptLevel o);
// Flags shared by every build: language mode, arithmetic semantics, the
// runtime configuration macros and include path.
std::vector<std::string> toolchain_flags(const BuildConfig& cfg);

// Phase numbers: 0 source, 1 parsed, 2 typed and slotted, 3 optimized.
enum : int { PhaseSource = 0, PhaseParse = 1, PhaseInfer = 2, PhaseOptimize = 3 };

// Reads `.vpy` source or `.oast` text. The `.oast` form is recognized by its
// leading `(module`.
NodePtr load_program(std::string_view text);
bool looks_like_oast(std::string_view text);

// The last phase this tree is known to have passed: 1 untyped, 3 when a
// lowered loop is present, otherwise 2. Rerunning phase 3 is harmless.
int tree_phase(const AstNode& root);

// Runs phases `from+1 .. to` in place. With cfg.check, a non-empty
// check_frozen report raises an Internal error listing every diagnostic.
void run_phases(AstNode& root, int from, int to, const BuildConfig& cfg);

// Loads and advances to `to`, starting wherever the input already is.
NodePtr compile_to_phase(std::string_view text, int to, const BuildConfig& cfg);

// Phase 4 for the configured backend on a phase-3 tree.
std::string emit_backend(const AstNode& root, const BuildConfig& cfg);

// Phases 1-4 in one process.
std::string compile_in_process(std::string_view text, const BuildConfig& cfg);

// Phases 1-4 as four `vpyc` processes connected by `.oast` pipes.
std::string compile_piped(std::string_view text, const BuildConfig& cfg, const std::string& vpyc);

// Command-line flags for a `vpyc` stage that reproduce cfg.
std::vector<std::string> config_args(const BuildConfig& cfg);

// Builds `unit` (an Olympus translation unit) into `exe`. Raises Toolchain
// with the captured compiler output on failure.
void build_unit(const std::string& unit, const std::string& exe, const BuildConfig& cfg);

// Builds a handwritten C reference program with the same opt flags.
void build_native(const std::string& c_path, const std::string& exe, const BuildConfig& cfg,
                  const std::vector<std::string>& defines = {});

std::vector<std::string> build_command(const std::vector<std::string>& sources, const std::string& exe,
                                       const BuildConfig& cfg, bool with_runtime,
                                       const std::vector<std::string>& extra = {});

RunResult run_executable(const std::string& exe, const std::string& input = {});

struct SegmentSizes {
    uint64_t text = 0;
    uint64_t data = 0;
    uint64_t bss = 0;
};

// Berkeley-format `size` output for one file.
SegmentSizes parse_size_output(std::string_view out);
// Runs $VPYC_SIZE (default `size`) on exe.
SegmentSizes measure_sizes(const std::string& exe);

// First differing line of two outputs, rendered for a report; empty when equal.
std::string diff_report(std::string_view expected, std::string_view actual);

}  // namespace vpy
