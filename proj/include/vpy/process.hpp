#pragma once

#include <string>
#include <vector>

namespace vpy {

struct ProcessResult {
    std::string out;
    std::string err;
    int exit_code = 0;    // 128 + signal when killed by a signal
    bool spawned = true;  // false when the program could not be started
};

// Runs argv[0] (searched on PATH) with `input` on stdin, capturing stdout and
// stderr.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input = {});

// As run_process, but the child reads this process's own stdin.
ProcessResult run_process_inherit_stdin(const std::vector<std::string>& argv);

// Connects the stages stdout-to-stdin. `out` is the last stage's stdout, `err`
// every stage's stderr in one stream, `exit_code` the first nonzero status.
ProcessResult run_pipeline(const std::vector<std::vector<std::string>>& stages, const std::string& input = {});

// Fresh private directory removed with its contents on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::string& path() const { return m_path; }
    std::string file(const std::string& name) const { return m_path + "/" + name; }

private:
    std::string m_path;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Shell-style rendering for diagnostics.
std::string join_command(const std::vector<std::string>& argv);

}  // namespace vpy
