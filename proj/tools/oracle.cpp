#include <cstdio>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "vpy/driver.hpp"
#include "vpy/oracle.hpp"
#include "vpy/process.hpp"

using namespace vpy;

int main(int argc, char** argv)
{
    CLI::App app{"oracle: reference interpreter for the vPython subset"};
    app.require_subcommand(1);

    std::string input;
    int int_width = 32;
    int real_width = 64;
    size_t heap_bytes = 8388608;
    int phase = 3;
    auto* run = app.add_subcommand("run", "interpret a program");
    run->add_option("input", input, ".vpy or .oast file, - for stdin")->required();
    run->add_option("--int-width", int_width)->check(CLI::IsMember({32, 64}))->capture_default_str();
    run->add_option("--real-width", real_width)->check(CLI::IsMember({32, 64}))->capture_default_str();
    run->add_option("--heap-bytes", heap_bytes)->capture_default_str();
    run->add_option("--phase", phase, "2 interprets before loop lowering, 3 after")
        ->check(CLI::IsMember({2, 3}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    std::string label = input == "-" ? "<stdin>" : input;
    try {
        std::string text = input == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(input);
        BuildConfig cfg;
        cfg.compile.int_width = int_width;
        cfg.compile.real_width = real_width;
        NodePtr tree = compile_to_phase(text, phase, cfg);
        OracleOptions oo;
        oo.compile = cfg.compile;
        oo.heap_bytes = heap_bytes;
        RunResult r = interpret(*tree, oo);
        std::fwrite(r.out.data(), 1, r.out.size(), stdout);
        std::fflush(stdout);
        std::fwrite(r.err.data(), 1, r.err.size(), stderr);
        return r.exit_code;
    } catch (const CompileError& e) {
        std::fprintf(stderr, "%s:%s\n", label.c_str(),
                     e.loc().valid() ? e.what() : (std::string(" ") + e.what()).c_str());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "oracle: %s\n", e.what());
        return 1;
    }
}
