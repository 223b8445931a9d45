#include "grouptune/subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sched.h>
#include <sys/wait.h>
#include <unistd.h>

#include "grouptune/error.hpp"

namespace grouptune {

namespace {

[[noreturn]] void fail(const char* what) {
    throw IoError(std::string(what) + ": " + std::strerror(errno));
}

void set_cloexec(int fd) { fcntl(fd, F_SETFD, FD_CLOEXEC); }

void set_nonblock(int fd) {
    fcntl(fd, F_SETFL, fcntl(fd, F_GETFL, 0) | O_NONBLOCK);
}

// Drains a non-blocking pipe into `sink`; returns false once the write end
// is closed.
bool drain(int fd, std::string& sink) {
    char buf[4096];
    for (;;) {
        const ssize_t n = read(fd, buf, sizeof buf);
        if (n > 0) {
            sink.append(buf, static_cast<std::size_t>(n));
            continue;
        }
        if (n == 0) return false;
        if (errno == EAGAIN || errno == EWOULDBLOCK) return true;
        if (errno == EINTR) continue;
        return false;
    }
}

} // namespace

RunResult run_command(const std::vector<std::string>& argv,
                      const std::filesystem::path& workdir,
                      double timeout_seconds, int pin_core) {
    if (argv.empty()) throw IoError("run_command: empty argv");

    int out_pipe[2], err_pipe[2], exec_pipe[2];
    if (pipe(out_pipe) != 0) fail("pipe");
    if (pipe(err_pipe) != 0) {
        close(out_pipe[0]);
        close(out_pipe[1]);
        fail("pipe");
    }
    if (pipe(exec_pipe) != 0) {
        close(out_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[0]);
        close(err_pipe[1]);
        fail("pipe");
    }
    set_cloexec(exec_pipe[1]); // stays open only if execvp fails

    const auto start = std::chrono::steady_clock::now();
    const pid_t pid = fork();
    if (pid < 0) {
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1],
                       exec_pipe[0], exec_pipe[1]})
            close(fd);
        fail("fork");
    }

    if (pid == 0) {
        setpgid(0, 0); // own process group, so a timeout kills helpers too
        if (pin_core >= 0) {
            cpu_set_t set;
            CPU_ZERO(&set);
            CPU_SET(static_cast<unsigned>(pin_core), &set);
            sched_setaffinity(0, sizeof set, &set); // best effort
        }
        if (!workdir.empty() && chdir(workdir.c_str()) != 0) _exit(127);
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1],
                       exec_pipe[0]})
            close(fd);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const std::string& a : argv)
            cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        execvp(cargv[0], cargv.data());
        const int err = errno; // exec failed; tell the parent why
        (void)!write(exec_pipe[1], &err, sizeof err);
        _exit(127);
    }

    setpgid(pid, pid); // mirror of the child's call; loser of the race no-ops
    close(out_pipe[1]);
    close(err_pipe[1]);
    close(exec_pipe[1]);
    set_nonblock(out_pipe[0]);
    set_nonblock(err_pipe[0]);

    RunResult result;
    struct pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
    std::string* sinks[2] = {&result.stdout_data, &result.stderr_data};
    bool open[2] = {true, true};
    bool killed = false;

    while (open[0] || open[1]) {
        int timeout_ms = -1;
        if (timeout_seconds > 0.0 && !killed) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
            const double left = timeout_seconds - elapsed;
            if (left <= 0.0) {
                kill(-pid, SIGKILL);
                result.timed_out = true;
                killed = true;
                timeout_ms = -1;
            } else {
                timeout_ms = static_cast<int>(left * 1000.0) + 1;
            }
        }
        struct pollfd live[2];
        int nlive = 0;
        for (int i = 0; i < 2; ++i)
            if (open[i]) live[nlive++] = fds[i];
        const int rc = poll(live, static_cast<nfds_t>(nlive), timeout_ms);
        if (rc < 0) {
            if (errno == EINTR) continue;
            kill(-pid, SIGKILL);
            waitpid(pid, nullptr, 0);
            fail("poll");
        }
        if (rc == 0) continue; // timed out; next pass kills
        for (int i = 0; i < nlive; ++i) {
            if (!(live[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            const int which = live[i].fd == out_pipe[0] ? 0 : 1;
            if (!drain(live[i].fd, *sinks[which])) {
                close(live[i].fd);
                open[which] = false;
            }
        }
    }

    int status = 0;
    while (waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) fail("waitpid");
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    int exec_errno = 0;
    const ssize_t n = read(exec_pipe[0], &exec_errno, sizeof exec_errno);
    close(exec_pipe[0]);
    if (n == static_cast<ssize_t>(sizeof exec_errno)) result.exec_failed = true;

    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status))
        result.exit_code = 128 + WTERMSIG(status);
    return result;
}

} // namespace grouptune
