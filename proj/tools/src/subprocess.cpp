/*
 *  Copyright (C) 2026  The casp2fzn authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */
#include "subprocess.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace casp2fzn::tools {

namespace {

struct Pipe {
    int fd[2] = {-1, -1};
    Pipe() {
        if (pipe2(fd, O_CLOEXEC) != 0) throw ProcessError(std::string("pipe: ") + std::strerror(errno));
    }
    ~Pipe() {
        closeRead();
        closeWrite();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;
    void closeRead() {
        if (fd[0] >= 0) close(fd[0]);
        fd[0] = -1;
    }
    void closeWrite() {
        if (fd[1] >= 0) close(fd[1]);
        fd[1] = -1;
    }
};

} // namespace

ProcessResult runProcess(const std::vector<std::string>& argv, const std::function<void(std::string_view)>& onLine) {
    if (argv.empty()) throw ProcessError("empty command");
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    Pipe out;
    Pipe err;
    Pipe status;
    pid_t pid = fork();
    if (pid < 0) throw ProcessError(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        dup2(out.fd[1], STDOUT_FILENO);
        dup2(err.fd[1], STDERR_FILENO);
        execvp(args[0], args.data());
        int e = errno;
        ssize_t n = write(status.fd[1], &e, sizeof e);
        (void)n;
        _exit(127);
    }
    out.closeWrite();
    err.closeWrite();
    status.closeWrite();

    int execErrno = 0;
    ssize_t n = 0;
    do {
        n = read(status.fd[0], &execErrno, sizeof execErrno);
    } while (n < 0 && errno == EINTR);
    if (n == sizeof execErrno) {
        int st = 0;
        waitpid(pid, &st, 0);
        throw ProcessError("cannot run " + argv[0] + ": " + std::strerror(execErrno));
    }

    ProcessResult res;
    std::string pending;
    pollfd fds[2] = {{out.fd[0], POLLIN, 0}, {err.fd[0], POLLIN, 0}};
    int open = 2;
    char buf[4096];
    try {
        while (open > 0) {
            if (poll(fds, 2, -1) < 0) {
                if (errno == EINTR) continue;
                break;
            }
            for (int i = 0; i < 2; ++i) {
                if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
                ssize_t r = read(fds[i].fd, buf, sizeof buf);
                if (r < 0 && errno == EINTR) continue;
                if (r <= 0) {
                    fds[i].fd = -1;
                    --open;
                    continue;
                }
                if (i == 1) {
                    res.err.append(buf, static_cast<std::size_t>(r));
                    continue;
                }
                pending.append(buf, static_cast<std::size_t>(r));
                std::size_t start = 0;
                for (std::size_t nl; (nl = pending.find('\n', start)) != std::string::npos; start = nl + 1) {
                    onLine(std::string_view(pending).substr(start, nl - start));
                }
                pending.erase(0, start);
            }
        }
        if (!pending.empty()) onLine(pending);
    }
    catch (...) {
        kill(pid, SIGKILL);
        int st = 0;
        waitpid(pid, &st, 0);
        throw;
    }

    int st = 0;
    while (waitpid(pid, &st, 0) < 0 && errno == EINTR) {
    }
    if (WIFSIGNALED(st)) {
        res.signaled = true;
        res.exitCode = WTERMSIG(st);
    }
    else {
        res.exitCode = WEXITSTATUS(st);
    }
    return res;
}

} // namespace casp2fzn::tools
