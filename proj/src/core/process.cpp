// Copyright 2026 The git-historian Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

extern char** environ;

namespace historian {

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

// argv/envp must be built before fork: the child may only call
// async-signal-safe functions.
struct ExecImage {
  std::vector<std::string> args;
  std::vector<std::string> env;
  std::vector<char*> argv;
  std::vector<char*> envp;

  ExecImage(const std::vector<std::string>& a,
            const std::map<std::string, std::string>& overrides)
      : args(a) {
    for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
      std::string_view entry(*e);
      auto eq = entry.find('=');
      std::string key(entry.substr(0, eq));
      if (!overrides.contains(key)) env.emplace_back(entry);
    }
    for (const auto& [k, v] : overrides) env.push_back(k + "=" + v);
    for (auto& s : args) argv.push_back(s.data());
    argv.push_back(nullptr);
    for (auto& s : env) envp.push_back(s.data());
    envp.push_back(nullptr);
  }
};

[[noreturn]] void exec_child(const ExecImage& image, const std::filesystem::path& cwd) {
  if (!cwd.empty() && ::chdir(cwd.c_str()) != 0) ::_exit(127);
  ::execvpe(image.argv[0], image.argv.data(), image.envp.data());
  ::_exit(127);
}

void set_cloexec(int fd) { ::fcntl(fd, F_SETFD, FD_CLOEXEC); }

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& options) {
  ignore_sigpipe();
  ExecImage image(argv, options.env);
  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0) {
    throw Error(ErrorCode::kToolchainFailure, std::string("pipe: ") + std::strerror(errno));
  }
  for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) {
    set_cloexec(fd);
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    throw Error(ErrorCode::kToolchainFailure, std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], 0);
    ::dup2(out_pipe[1], 1);
    ::dup2(err_pipe[1], 2);
    exec_child(image, options.cwd);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  ProcessResult result;
  std::size_t written = 0;
  int in_fd = in_pipe[1];
  if (options.input.empty()) {
    ::close(in_fd);
    in_fd = -1;
  } else {
    ::fcntl(in_fd, F_SETFL, ::fcntl(in_fd, F_GETFL) | O_NONBLOCK);
  }
  int out_fd = out_pipe[0];
  int err_fd = err_pipe[0];
  char buf[65536];
  while (in_fd >= 0 || out_fd >= 0 || err_fd >= 0) {
    pollfd fds[3];
    nfds_t n = 0;
    if (in_fd >= 0) fds[n++] = {in_fd, POLLOUT, 0};
    if (out_fd >= 0) fds[n++] = {out_fd, POLLIN, 0};
    if (err_fd >= 0) fds[n++] = {err_fd, POLLIN, 0};
    if (::poll(fds, n, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (nfds_t i = 0; i < n; ++i) {
      if (fds[i].revents == 0) continue;
      if (fds[i].fd == in_fd) {
        ssize_t w = ::write(in_fd, options.input.data() + written,
                            options.input.size() - written);
        if (w > 0) written += static_cast<std::size_t>(w);
        if (w < 0 && errno != EAGAIN && errno != EINTR) written = options.input.size();
        if (written >= options.input.size()) {
          ::close(in_fd);
          in_fd = -1;
        }
      } else {
        int& fd = fds[i].fd == out_fd ? out_fd : err_fd;
        std::string& sink = fds[i].fd == out_fd ? result.out : result.err;
        ssize_t r = ::read(fd, buf, sizeof buf);
        if (r > 0) {
          sink.append(buf, static_cast<std::size_t>(r));
        } else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
          ::close(fd);
          fd = -1;
        }
      }
    }
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return result;
}

PipeProcess::PipeProcess(const std::vector<std::string>& argv,
                         const ProcessOptions& options) {
  ignore_sigpipe();
  ExecImage image(argv, options.env);
  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0) {
    throw Error(ErrorCode::kToolchainFailure, std::string("pipe: ") + std::strerror(errno));
  }
  for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) set_cloexec(fd);
  pid_t pid = ::fork();
  if (pid < 0) {
    throw Error(ErrorCode::kToolchainFailure, std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    int devnull = ::open("/dev/null", O_WRONLY);
    ::dup2(in_pipe[0], 0);
    ::dup2(out_pipe[1], 1);
    if (devnull >= 0) ::dup2(devnull, 2);
    exec_child(image, options.cwd);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  pid_ = pid;
  in_fd_ = in_pipe[1];
  out_fd_ = out_pipe[0];
}

PipeProcess::~PipeProcess() {
  if (in_fd_ >= 0) ::close(in_fd_);
  if (out_fd_ >= 0) ::close(out_fd_);
  if (pid_ > 0) {
    int status = 0;
    while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
    }
  }
}

void PipeProcess::write(std::string_view data) {
  while (!data.empty()) {
    ssize_t w = ::write(in_fd_, data.data(), data.size());
    if (w < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kToolchainFailure, "child process closed its input");
    }
    data.remove_prefix(static_cast<std::size_t>(w));
  }
}

bool PipeProcess::fill() {
  if (pos_ > 0) {
    buffer_.erase(0, pos_);
    pos_ = 0;
  }
  char buf[65536];
  for (;;) {
    ssize_t r = ::read(out_fd_, buf, sizeof buf);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    buffer_.append(buf, static_cast<std::size_t>(r));
    return true;
  }
}

std::string PipeProcess::read_line() {
  for (;;) {
    auto nl = buffer_.find('\n', pos_);
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
      return line;
    }
    if (!fill()) throw Error(ErrorCode::kToolchainFailure, "unexpected end of child output");
  }
}

std::string PipeProcess::read_exact(std::size_t n) {
  while (buffer_.size() - pos_ < n) {
    if (!fill()) throw Error(ErrorCode::kToolchainFailure, "unexpected end of child output");
  }
  std::string data = buffer_.substr(pos_, n);
  pos_ += n;
  return data;
}

ProcessResult git(const std::vector<std::string>& args, const ProcessOptions& options) {
  std::vector<std::string> argv;
  argv.reserve(args.size() + 1);
  argv.emplace_back("git");
  argv.insert(argv.end(), args.begin(), args.end());
  ProcessOptions opts = options;
  opts.env.emplace("LC_ALL", "C");
  opts.env.emplace("GIT_TERMINAL_PROMPT", "0");
  return run_process(argv, opts);
}

ProcessResult git_checked(const std::vector<std::string>& args,
                          const ProcessOptions& options, ErrorCode on_failure) {
  ProcessResult result = git(args, options);
  if (result.exit_code == 127 && result.out.empty() && result.err.empty()) {
    throw Error(ErrorCode::kToolchainFailure, "could not run git");
  }
  if (result.exit_code != 0) {
    std::string what = "git";
    for (const auto& a : args) {
      if (what.size() > 120) break;
      what += " " + a;
    }
    std::string err = result.err;
    while (!err.empty() && (err.back() == '\n' || err.back() == '\r')) err.pop_back();
    throw Error(on_failure, what + ": " + err);
  }
  return result;
}

std::map<std::string, std::string> hermetic_git_env() {
  return {
      {"GIT_CONFIG_NOSYSTEM", "1"},
      {"GIT_CONFIG_GLOBAL", "/dev/null"},
      {"GIT_AUTHOR_NAME", "git-historian"},
      {"GIT_AUTHOR_EMAIL", "git-historian@localhost"},
      {"GIT_COMMITTER_NAME", "git-historian"},
      {"GIT_COMMITTER_EMAIL", "git-historian@localhost"},
      {"TZ", "UTC"},
  };
}

}  // namespace historian
