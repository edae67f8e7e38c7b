#include "vpy/process.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace vpy {

namespace {

struct Pipe {
    int rd = -1;
    int wr = -1;
};

Pipe make_pipe()
{
    int fds[2];
    if (pipe2(fds, O_CLOEXEC) != 0)
        throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    return {fds[0], fds[1]};
}

void close_fd(int& fd)
{
    if (fd >= 0)
        ::close(fd);
    fd = -1;
}

int decode_status(int status)
{
    if (WIFEXITED(status))
        return WEXITSTATUS(status);
    if (WIFSIGNALED(status))
        return 128 + WTERMSIG(status);
    return 255;
}

// Spawns one stage with the given descriptors as its standard streams.
pid_t spawn_stage(const std::vector<std::string>& argv, int in, int out, int err)
{
    posix_spawn_file_actions_t fa;
    posix_spawn_file_actions_init(&fa);
    posix_spawn_file_actions_adddup2(&fa, in, 0);
    posix_spawn_file_actions_adddup2(&fa, out, 1);
    posix_spawn_file_actions_adddup2(&fa, err, 2);
    std::vector<char*> args;
    for (const auto& a : argv)
        args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    pid_t pid = -1;
    int rc = posix_spawnp(&pid, args[0], &fa, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&fa);
    if (rc != 0)
        return -1;
    return pid;
}

ProcessResult pipeline_impl(const std::vector<std::vector<std::string>>& stages, const std::string* input)
{
    static const bool sigpipe_ignored = [] {
        std::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)sigpipe_ignored;

    ProcessResult result;
    if (stages.empty())
        return result;

    Pipe in = make_pipe();
    Pipe out = make_pipe();
    Pipe err = make_pipe();
    std::vector<pid_t> pids;
    if (!input)
        close_fd(in.rd);
    int prev_rd = input ? in.rd : 0;
    for (size_t i = 0; i < stages.size(); ++i) {
        Pipe link;
        int stage_out = out.wr;
        if (i + 1 < stages.size()) {
            link = make_pipe();
            stage_out = link.wr;
        }
        pid_t pid = spawn_stage(stages[i], prev_rd, stage_out, err.wr);
        if (pid < 0) {
            result.spawned = false;
            result.err += "cannot start " + stages[i].at(0) + "\n";
        } else {
            pids.push_back(pid);
        }
        if (prev_rd != in.rd && prev_rd != 0)
            close_fd(prev_rd);
        close_fd(link.wr);
        prev_rd = link.rd;
    }
    close_fd(in.rd);
    close_fd(out.wr);
    close_fd(err.wr);

    size_t written = 0;
    if (!input || input->empty())
        close_fd(in.wr);
    else
        fcntl(in.wr, F_SETFL, fcntl(in.wr, F_GETFL) | O_NONBLOCK);

    char buf[65536];
    while (out.rd >= 0 || err.rd >= 0) {
        pollfd fds[3];
        int n = 0;
        int idx_out = -1, idx_err = -1, idx_in = -1;
        if (out.rd >= 0) {
            idx_out = n;
            fds[n++] = {out.rd, POLLIN, 0};
        }
        if (err.rd >= 0) {
            idx_err = n;
            fds[n++] = {err.rd, POLLIN, 0};
        }
        if (in.wr >= 0) {
            idx_in = n;
            fds[n++] = {in.wr, POLLOUT, 0};
        }
        if (poll(fds, n, -1) < 0) {
            if (errno == EINTR)
                continue;
            break;
        }
        if (idx_in >= 0 && fds[idx_in].revents) {
            ssize_t w = ::write(in.wr, input->data() + written, input->size() - written);
            if (w > 0)
                written += static_cast<size_t>(w);
            if (w < 0 && errno != EAGAIN && errno != EINTR)
                written = input->size();
            if (written >= input->size())
                close_fd(in.wr);
        }
        auto drain = [&](int idx, int& fd, std::string& sink) {
            if (idx < 0 || !fds[idx].revents)
                return;
            ssize_t r = ::read(fd, buf, sizeof buf);
            if (r > 0)
                sink.append(buf, static_cast<size_t>(r));
            else if (r == 0 || (errno != EINTR && errno != EAGAIN))
                close_fd(fd);
        };
        drain(idx_out, out.rd, result.out);
        drain(idx_err, err.rd, result.err);
    }
    close_fd(in.wr);

    for (pid_t pid : pids) {
        int status = 0;
        while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
        }
        int code = decode_status(status);
        if (result.exit_code == 0)
            result.exit_code = code;
    }
    if (!result.spawned && result.exit_code == 0)
        result.exit_code = 127;
    return result;
}

}  // namespace

ProcessResult run_pipeline(const std::vector<std::vector<std::string>>& stages, const std::string& input)
{
    return pipeline_impl(stages, &input);
}

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input)
{
    return pipeline_impl({argv}, &input);
}

ProcessResult run_process_inherit_stdin(const std::vector<std::string>& argv)
{
    return pipeline_impl({argv}, nullptr);
}

TempDir::TempDir()
{
    std::string tmpl = (std::filesystem::temp_directory_path() / "vpyc-XXXXXX").string();
    if (!mkdtemp(tmpl.data()))
        throw std::runtime_error(std::string("mkdtemp: ") + std::strerror(errno));
    m_path = tmpl;
}

TempDir::~TempDir()
{
    std::error_code ec;
    std::filesystem::remove_all(m_path, ec);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path);
}

std::string join_command(const std::vector<std::string>& argv)
{
    std::string s;
    for (const auto& a : argv) {
        if (!s.empty())
            s += ' ';
        bool plain = !a.empty() && a.find_first_of(" \t\n'\"\\$`") == std::string::npos;
        if (plain) {
            s += a;
        } else {
            s += '\'';
            for (char c : a) {
                if (c == '\'')
                    s += "'\\''";
                else
                    s += c;
            }
            s += '\'';
        }
    }
    return s;
}

}  // namespace vpy
