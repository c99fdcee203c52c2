#include "solver.hpp"

#include <cctype>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "error.hpp"

namespace tyro {

namespace {

std::vector<std::string> split_ws(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string exe_dir() {
  char buf[4096];
  ssize_t n = ::readlink("/proc/self/exe", buf, sizeof buf - 1);
  if (n <= 0) return {};
  buf[n] = '\0';
  std::string p(buf);
  auto slash = p.rfind('/');
  return slash == std::string::npos ? std::string() : p.substr(0, slash);
}

struct RunOutcome {
  std::string out;
  int exit_code = -1;
  bool timed_out = false;
  bool exec_failed = false;
};

RunOutcome run_process(const std::vector<std::string> &command,
                       const std::string &input, double timeout_sec) {
  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (::pipe(in_pipe) || ::pipe(out_pipe) || ::pipe(err_pipe))
    fail(TYRO_ERR_INTERNAL, "pipe() failed");
  ::fcntl(err_pipe[1], F_SETFD, FD_CLOEXEC);

  pid_t pid = ::fork();
  if (pid < 0) fail(TYRO_ERR_INTERNAL, "fork() failed");
  if (pid == 0) {
    ::dup2(in_pipe[0], 0);
    ::dup2(out_pipe[1], 1);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    std::vector<char *> argv;
    for (const auto &a : command) argv.push_back(const_cast<char *>(a.c_str()));
    argv.push_back(nullptr);
    ::execvp(argv[0], argv.data());
    int e = errno;
    (void)!::write(err_pipe[1], &e, sizeof e);
    ::_exit(127);
  }

  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  ::fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);

  RunOutcome r;
  size_t written = 0;
  bool stdin_open = true, stdout_open = true;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(timeout_sec);

  while (stdout_open || stdin_open) {
    struct pollfd fds[2];
    int nfds = 0;
    int out_slot = -1, in_slot = -1;
    if (stdout_open) {
      out_slot = nfds;
      fds[nfds++] = {out_pipe[0], POLLIN, 0};
    }
    if (stdin_open) {
      in_slot = nfds;
      fds[nfds++] = {in_pipe[1], POLLOUT, 0};
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    if (left <= 0) {
      r.timed_out = true;
      break;
    }
    int rc = ::poll(fds, nfds, (int)std::min<long long>(left, 200));
    if (rc < 0 && errno != EINTR) break;
    if (rc <= 0) continue;

    if (in_slot >= 0 && (fds[in_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (written < input.size() && !(fds[in_slot].revents & (POLLERR | POLLHUP))) {
        ssize_t n = ::write(in_pipe[1], input.data() + written,
                            input.size() - written);
        if (n > 0) written += (size_t)n;
        else if (n < 0 && errno != EAGAIN && errno != EINTR) {
          ::close(in_pipe[1]);
          stdin_open = false;
        }
      }
      if (written >= input.size() || (fds[in_slot].revents & (POLLERR | POLLHUP))) {
        if (stdin_open) ::close(in_pipe[1]);
        stdin_open = false;
      }
    }
    if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP))) {
      char buf[65536];
      ssize_t n = ::read(out_pipe[0], buf, sizeof buf);
      if (n > 0) {
        r.out.append(buf, (size_t)n);
      } else if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) {
        ::close(out_pipe[0]);
        stdout_open = false;
      }
    }
  }
  if (stdin_open) ::close(in_pipe[1]);
  if (stdout_open) ::close(out_pipe[0]);

  if (r.timed_out) {
    ::kill(pid, SIGKILL);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);

  int child_errno = 0;
  if (::read(err_pipe[0], &child_errno, sizeof child_errno) ==
      (ssize_t)sizeof child_errno)
    r.exec_failed = true;
  ::close(err_pipe[0]);
  return r;
}

// Scans s from `pos` for the next integer token; returns -1 when none.
long next_integer(const std::string &s, size_t &pos) {
  while (pos < s.size() && !std::isdigit((unsigned char)s[pos])) pos++;
  if (pos >= s.size()) return -1;
  long v = 0;
  while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
    v = v * 10 + (s[pos++] - '0');
  return v;
}

} // namespace

std::vector<std::string> default_solver_command() {
  if (const char *env = ::getenv("TYRO_SOLVER")) {
    std::vector<std::string> cmd = split_ws(env);
    if (!cmd.empty()) return cmd;
  }
  std::string dir = exe_dir();
  if (!dir.empty()) {
    std::string cand = dir + "/tyro-z3";
    if (::access(cand.c_str(), X_OK) == 0) return {cand};
  }
  return {"z3", "-in"};
}

std::string run_solver(const std::string &script, const SolverConfig &cfg) {
  if (cfg.command.empty())
    fail(TYRO_ERR_INVALID_ARGUMENT, "empty solver command");
  RunOutcome r = run_process(cfg.command, script, cfg.timeout_sec);
  if (r.timed_out)
    fail(TYRO_ERR_SOLVER_TIMEOUT, "solver exceeded timeout of " +
                                      std::to_string(cfg.timeout_sec) + " s");
  if (r.exec_failed || (r.exit_code == 127 && r.out.empty()))
    fail(TYRO_ERR_SOLVER_NOT_FOUND,
         "cannot execute solver '" + cfg.command[0] + "'");
  bool has_verdict = r.out.find("sat") != std::string::npos; // covers unsat
  if (r.exit_code != 0 && !has_verdict)
    fail(TYRO_ERR_SOLVER_CRASH, "solver exited with code " +
                                    std::to_string(r.exit_code) +
                                    " and no verdict:\n" + r.out);
  return r.out;
}

ErrorSource parse_result(const std::string &raw, const IrDoc &doc,
                         const LocForest &forest) {
  // Verdict is the first non-blank line that is exactly sat/unsat/unknown.
  std::istringstream in(raw);
  std::string line, verdict;
  while (std::getline(in, line)) {
    std::string t;
    for (char c : line)
      if (!std::isspace((unsigned char)c)) t += c;
    if (t == "sat" || t == "unsat" || t == "unknown") {
      verdict = t;
      break;
    }
  }
  if (verdict.empty())
    fail(TYRO_ERR_UNPARSEABLE_OUTPUT, "no sat/unsat verdict in solver output:\n" + raw);
  if (verdict == "unsat")
    fail(TYRO_ERR_HARD_CONFLICT, "hard locations alone are inconsistent");
  if (verdict == "unknown")
    fail(TYRO_ERR_UNPARSEABLE_OUTPUT, "solver returned 'unknown'");

  ErrorSource src;
  auto obj = raw.find("(objectives");
  if (obj == std::string::npos)
    fail(TYRO_ERR_UNPARSEABLE_OUTPUT, "missing (objectives) block:\n" + raw);
  size_t pos = obj + 11;
  long objective = next_integer(raw, pos);
  if (objective < 0)
    fail(TYRO_ERR_UNPARSEABLE_OUTPUT, "no objective value:\n" + raw);
  src.total_weight = (int)objective;

  bool any_assignment = false;
  for (int i : forest.indices) {
    std::string key = "(l" + std::to_string(i) + " ";
    auto at = raw.find(key);
    if (at == std::string::npos) continue;
    any_assignment = true;
    size_t v = at + key.size();
    while (v < raw.size() && std::isspace((unsigned char)raw[v])) v++;
    if (raw.compare(v, 5, "false") == 0) src.removed.insert(i);
  }
  if (!any_assignment && !forest.indices.empty())
    fail(TYRO_ERR_UNPARSEABLE_OUTPUT, "missing model assignment block:\n" + raw);

  for (int i : src.removed) {
    const LocEntry *l = doc.find_loc(i);
    src.per_location[i] = {l ? l->range : SourceRange{},
                           forest.weight.at(i)};
  }
  return src;
}

ErrorSource localize(const IrDoc &doc, const SolverConfig &cfg,
                     const std::vector<int> &hard) {
  LocForest forest = weighted_forest(doc, hard);
  std::string script = encode(doc, forest, cfg.encoding);
  std::string raw = run_solver(script, cfg);
  try {
    return parse_result(raw, doc, forest);
  } catch (const Error &e) {
    if (e.code != TYRO_ERR_UNPARSEABLE_OUTPUT) throw;
    // Some solvers gate model output behind an option; retry once.
    std::string retry = "(set-option :produce-models true)\n" + script;
    return parse_result(run_solver(retry, cfg), doc, forest);
  }
}

bool verify_error_source(const IrDoc &doc, const SolverConfig &cfg,
                         const std::vector<int> &removed,
                         const std::vector<int> &hard) {
  LocForest forest = weighted_forest(doc, hard);
  std::string script = encode_fixed(doc, forest, cfg.encoding, removed);
  std::string raw = run_solver(script, cfg);
  if (raw.find("unsat") != std::string::npos) return false;
  if (raw.find("sat") != std::string::npos) return true;
  fail(TYRO_ERR_UNPARSEABLE_OUTPUT, "no verdict from solver:\n" + raw);
}

} // namespace tyro
