// Command-line front end over the tyro C API. Subcommands mirror the
// pipeline stages: constraints | encode | localize | oracle | eval.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tyro/tyro.h"

using ordered_json = nlohmann::ordered_json;

namespace {

// Exit codes: 2 front-end/IR errors, 3 solver timeout, 4 hard conflict,
// 5 oracle guard, 1 anything else.
int exit_code_for(tyro_status s) {
  switch (s) {
  case TYRO_OK: return 0;
  case TYRO_ERR_SYNTAX:
  case TYRO_ERR_UNBOUND:
  case TYRO_ERR_IR_SYNTAX:
  case TYRO_ERR_DANGLING_LOC:
  case TYRO_ERR_UNKNOWN_SCHEME:
  case TYRO_ERR_MALFORMED_LOCATIONS:
    return 2;
  case TYRO_ERR_SOLVER_TIMEOUT: return 3;
  case TYRO_ERR_HARD_CONFLICT: return 4;
  case TYRO_ERR_TOO_LARGE: return 5;
  default: return 1;
  }
}

[[noreturn]] void die(tyro_status s) {
  std::cerr << "error: " << tyro_status_name(s) << ": " << tyro_last_error()
            << "\n";
  std::exit(exit_code_for(s));
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    std::exit(1);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::string> load_prelude(const std::string &path) {
  if (path.empty()) return std::nullopt;
  return read_file(path);
}

std::vector<int> parse_int_list(const std::string &s) {
  std::vector<int> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

std::string range_str(const tyro_range &r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d;%d-%d;%d", r.start_line, r.start_col,
                r.end_line, r.end_col);
  return buf;
}

bool parse_range(const std::string &s, tyro_range &out) {
  return std::sscanf(s.c_str(), "%d;%d-%d;%d", &out.start_line, &out.start_col,
                     &out.end_line, &out.end_col) == 4;
}

struct LocalizeFlags {
  std::string solver;
  double timeout = 0;
  std::string encoding = "flat";
  std::string hard;
  std::string prelude_path;
  bool json = false;
};

tyro_localize_opts make_opts(const LocalizeFlags &f,
                             const std::vector<int> &hard) {
  tyro_localize_opts o{};
  o.solver_cmd = f.solver.empty() ? nullptr : f.solver.c_str();
  o.timeout_sec = f.timeout;
  o.encoding = f.encoding == "deep" ? TYRO_ENCODE_DEEP : TYRO_ENCODE_FLAT;
  o.hard = hard.empty() ? nullptr : hard.data();
  o.hard_count = hard.size();
  return o;
}

struct RunReport {
  std::string path;
  std::string verdict; // well-typed | error-source | hard-conflict | timeout | <error name>
  int total_weight = 0;
  struct Removed {
    int index;
    tyro_range range;
    int weight;
  };
  std::vector<Removed> removed;
  int constraint_count = 0; // equality constraints
  double t_constraints = 0, t_solve = 0;
  int loc_lines = 0;
  bool classical_ok = false;
  std::optional<tyro_range> classical_blame;
  std::vector<tyro_range> truth;
};

// Full per-program pipeline; never throws/exits, records failures in the
// verdict field instead.
RunReport run_one(const std::string &path, const std::string &source,
                  const LocalizeFlags &flags, const std::vector<int> &hard,
                  const char *prelude) {
  RunReport r;
  r.path = path;
  for (char c : source)
    if (c == '\n') r.loc_lines++;
  if (!source.empty() && source.back() != '\n') r.loc_lines++;

  auto t0 = std::chrono::steady_clock::now();
  char *ir = nullptr;
  tyro_status s = tyro_source_to_ir(source.c_str(), prelude, &ir);
  auto t1 = std::chrono::steady_clock::now();
  r.t_constraints = std::chrono::duration<double>(t1 - t0).count();
  if (s != TYRO_OK) {
    r.verdict = tyro_status_name(s);
    return r;
  }
  tyro_ir_stats(ir, nullptr, &r.constraint_count, nullptr, nullptr);

  tyro_localize_opts opts = make_opts(flags, hard);
  tyro_result *res = nullptr;
  s = tyro_localize_ir(ir, &opts, &res);
  auto t2 = std::chrono::steady_clock::now();
  r.t_solve = std::chrono::duration<double>(t2 - t1).count();
  tyro_free(ir);
  if (s == TYRO_ERR_HARD_CONFLICT) {
    r.verdict = "hard-conflict";
    return r;
  }
  if (s == TYRO_ERR_SOLVER_TIMEOUT) {
    r.verdict = "timeout";
    return r;
  }
  if (s != TYRO_OK) {
    r.verdict = tyro_status_name(s);
    return r;
  }
  r.total_weight = tyro_result_total_weight(res);
  for (size_t i = 0; i < tyro_result_removed_count(res); i++)
    r.removed.push_back({tyro_result_removed_index(res, i),
                         tyro_result_removed_range(res, i),
                         tyro_result_removed_weight(res, i)});
  tyro_result_free(res);
  r.verdict = r.removed.empty() && r.total_weight == 0 ? "well-typed"
                                                       : "error-source";

  int ok = 0;
  tyro_range blame{};
  if (tyro_classical_infer(source.c_str(), prelude, &ok, &blame) == TYRO_OK) {
    r.classical_ok = ok != 0;
    if (!ok) r.classical_blame = blame;
  }
  return r;
}

ordered_json report_json(const RunReport &r, const std::string &encoding) {
  ordered_json removed = ordered_json::array();
  for (const auto &m : r.removed)
    removed.push_back({{"index", m.index},
                       {"range", range_str(m.range)},
                       {"weight", m.weight}});
  return ordered_json{{"verdict", r.verdict},
                      {"removed", removed},
                      {"total_weight", r.total_weight},
                      {"objective", r.total_weight},
                      {"timings",
                       {{"constraints_sec", r.t_constraints},
                        {"solve_sec", r.t_solve}}},
                      {"constraint_count", r.constraint_count},
                      {"encoding", encoding}};
}

void print_report_text(const RunReport &r) {
  std::cout << r.verdict;
  if (r.verdict == "error-source") {
    std::cout << " weight " << r.total_weight << "\n";
    for (const auto &m : r.removed)
      std::cout << "  " << m.index << " " << range_str(m.range) << " weight "
                << m.weight << "\n";
  } else {
    std::cout << "\n";
  }
}

tyro_verdict verdict_of(const std::vector<tyro_range> &reported,
                        const std::vector<tyro_range> &truth) {
  if (reported.empty()) return TYRO_MISS;
  tyro_verdict v = TYRO_MISS;
  if (tyro_classify(reported.data(), reported.size(), truth.data(),
                    truth.size(), &v) != TYRO_OK)
    return TYRO_MISS;
  return v;
}

const char *verdict_label(tyro_verdict v) {
  switch (v) {
  case TYRO_HIT: return "hit";
  case TYRO_CLOSE: return "close";
  case TYRO_MISS: return "miss";
  }
  return "?";
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n == 0 ? 0 : (n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"type error localization via weighted MaxSMT"};
  app.require_subcommand(1);

  std::string input, prelude_path;
  LocalizeFlags flags;
  int max_locations = 0;
  int jobs = 1;
  bool from_ir = false;

  auto *c_constraints =
      app.add_subcommand("constraints", "parse a program and print its constraint IR");
  c_constraints->add_option("input", input, "source file")->required();
  c_constraints->add_option("--prelude", prelude_path, "built-ins file (name : type lines)");

  auto *c_encode = app.add_subcommand("encode", "translate IR into a MaxSMT script");
  c_encode->add_option("input", input, "IR file")->required();
  c_encode->add_option("--encoding", flags.encoding, "deep|flat (default flat)")
      ->check(CLI::IsMember({"deep", "flat"}));
  c_encode->add_option("--hard", flags.hard, "comma-separated location indices to force hard");

  auto *c_localize = app.add_subcommand("localize", "run the full pipeline on a program");
  c_localize->add_option("input", input, "source file")->required();
  c_localize->add_option("--prelude", prelude_path, "built-ins file");
  c_localize->add_option("--solver", flags.solver, "solver command line");
  c_localize->add_option("--timeout", flags.timeout, "solver timeout in seconds (default 100)");
  c_localize->add_option("--encoding", flags.encoding, "deep|flat (default flat)")
      ->check(CLI::IsMember({"deep", "flat"}));
  c_localize->add_option("--hard", flags.hard, "comma-separated location indices to force hard");
  c_localize->add_flag("--json", flags.json, "emit a JSON report");
  c_localize->add_flag("--from-ir", from_ir, "input is IR text, not source");

  auto *c_oracle = app.add_subcommand("oracle", "enumerate all minimum error sources");
  c_oracle->add_option("input", input, "source file")->required();
  c_oracle->add_option("--prelude", prelude_path, "built-ins file");
  c_oracle->add_option("--max-locations", max_locations, "enumeration guard (default 20)");
  c_oracle->add_flag("--from-ir", from_ir, "input is IR text, not source");

  auto *c_eval = app.add_subcommand("eval", "run a manifest of programs and tabulate accuracy");
  c_eval->add_option("input", input, "manifest: one `path[: truth-ranges]` per line")->required();
  c_eval->add_option("--prelude", prelude_path, "built-ins file");
  c_eval->add_option("--solver", flags.solver, "solver command line");
  c_eval->add_option("--timeout", flags.timeout, "solver timeout in seconds");
  c_eval->add_option("--encoding", flags.encoding, "deep|flat (default flat)")
      ->check(CLI::IsMember({"deep", "flat"}));
  c_eval->add_option("--jobs", jobs, "max concurrent programs (default 1)");
  c_eval->add_flag("--json", flags.json, "emit JSON reports");

  CLI11_PARSE(app, argc, argv);

  auto prelude = load_prelude(prelude_path);
  const char *prelude_c = prelude ? prelude->c_str() : nullptr;
  std::vector<int> hard = parse_int_list(flags.hard);

  if (*c_constraints) {
    char *ir = nullptr;
    tyro_status s = tyro_source_to_ir(read_file(input).c_str(), prelude_c, &ir);
    if (s != TYRO_OK) die(s);
    std::cout << ir;
    tyro_free(ir);
    return 0;
  }

  if (*c_encode) {
    char *smt = nullptr;
    tyro_status s = tyro_ir_encode(
        read_file(input).c_str(),
        flags.encoding == "deep" ? TYRO_ENCODE_DEEP : TYRO_ENCODE_FLAT,
        hard.empty() ? nullptr : hard.data(), hard.size(), &smt);
    if (s != TYRO_OK) die(s);
    std::cout << smt;
    tyro_free(smt);
    return 0;
  }

  if (*c_localize) {
    std::string text = read_file(input);
    std::string ir_text;
    if (from_ir) {
      ir_text = text;
    } else {
      char *ir = nullptr;
      tyro_status s = tyro_source_to_ir(text.c_str(), prelude_c, &ir);
      if (s != TYRO_OK) die(s);
      ir_text = ir;
      tyro_free(ir);
    }
    tyro_localize_opts opts = make_opts(flags, hard);
    tyro_result *res = nullptr;
    auto t0 = std::chrono::steady_clock::now();
    tyro_status s = tyro_localize_ir(ir_text.c_str(), &opts, &res);
    auto t1 = std::chrono::steady_clock::now();
    if (s != TYRO_OK) {
      if (flags.json &&
          (s == TYRO_ERR_HARD_CONFLICT || s == TYRO_ERR_SOLVER_TIMEOUT)) {
        std::cout << ordered_json{
                         {"verdict", s == TYRO_ERR_HARD_CONFLICT
                                         ? "hard-conflict"
                                         : "timeout"}}
                         .dump(2)
                  << "\n";
      }
      die(s);
    }
    RunReport r;
    r.path = input;
    r.t_solve = std::chrono::duration<double>(t1 - t0).count();
    r.total_weight = tyro_result_total_weight(res);
    for (size_t i = 0; i < tyro_result_removed_count(res); i++)
      r.removed.push_back({tyro_result_removed_index(res, i),
                           tyro_result_removed_range(res, i),
                           tyro_result_removed_weight(res, i)});
    tyro_result_free(res);
    tyro_ir_stats(ir_text.c_str(), nullptr, &r.constraint_count, nullptr,
                  nullptr);
    r.verdict = r.removed.empty() && r.total_weight == 0 ? "well-typed"
                                                         : "error-source";
    if (flags.json)
      std::cout << report_json(r, flags.encoding).dump(2) << "\n";
    else
      print_report_text(r);
    return 0;
  }

  if (*c_oracle) {
    std::string text = read_file(input);
    std::string ir_text;
    if (from_ir) {
      ir_text = text;
    } else {
      char *ir = nullptr;
      tyro_status s = tyro_source_to_ir(text.c_str(), prelude_c, &ir);
      if (s != TYRO_OK) die(s);
      ir_text = ir;
      tyro_free(ir);
    }
    tyro_sources *srcs = nullptr;
    tyro_status s = tyro_oracle_ir(ir_text.c_str(), max_locations, &srcs);
    if (s != TYRO_OK) die(s);
    std::cout << "min weight " << tyro_sources_min_weight(srcs) << "\n";
    for (size_t k = 0; k < tyro_sources_count(srcs); k++) {
      std::cout << " ";
      if (tyro_sources_size(srcs, k) == 0) std::cout << " (empty)";
      for (size_t i = 0; i < tyro_sources_size(srcs, k); i++)
        std::cout << " " << tyro_sources_index(srcs, k, i);
      std::cout << "\n";
    }
    tyro_sources_free(srcs);
    return 0;
  }

  // eval
  struct Job {
    std::string path;
    std::vector<tyro_range> truth;
  };
  std::vector<Job> jobs_list;
  {
    std::istringstream in(read_file(input));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      Job j;
      auto colon = line.find(':');
      j.path = line.substr(0, colon);
      while (!j.path.empty() && j.path.back() == ' ') j.path.pop_back();
      if (colon != std::string::npos) {
        std::istringstream rs(line.substr(colon + 1));
        std::string tok;
        while (rs >> tok) {
          tyro_range r;
          if (parse_range(tok, r)) j.truth.push_back(r);
        }
      }
      if (!j.path.empty()) jobs_list.push_back(std::move(j));
    }
  }

  std::vector<RunReport> reports(jobs_list.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs_list.size()) return;
      std::string src = read_file(jobs_list[i].path);
      reports[i] = run_one(jobs_list[i].path, src, flags, hard, prelude_c);
      reports[i].truth = jobs_list[i].truth;
    }
  };
  {
    std::vector<std::thread> pool;
    for (int i = 0; i < std::max(1, jobs); i++) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }

  // 3x3 verdict table: rows = MaxSMT localizer, columns = classical blame.
  int table[3][3] = {};
  int classified = 0;
  for (auto &r : reports) {
    if (flags.json) {
      ordered_json j = report_json(r, flags.encoding);
      j["path"] = r.path;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << r.path << ": ";
      print_report_text(r);
    }
    if (r.truth.empty()) continue;
    std::vector<tyro_range> smt_ranges;
    for (const auto &m : r.removed) smt_ranges.push_back(m.range);
    std::vector<tyro_range> cls_ranges;
    if (r.classical_blame) cls_ranges.push_back(*r.classical_blame);
    tyro_verdict a = verdict_of(smt_ranges, r.truth);
    tyro_verdict b = verdict_of(cls_ranges, r.truth);
    table[(int)a][(int)b]++;
    classified++;
  }

  if (classified > 0) {
    std::cout << "\nlocalizer \\ classical   hit  close   miss\n";
    const char *names[3] = {"hit", "close", "miss"};
    for (int i = 0; i < 3; i++) {
      std::printf("%-20s", names[i]);
      for (int j = 0; j < 3; j++) std::printf("%7d", table[i][j]);
      std::printf("\n");
    }
  }

  // Timing summary grouped by program size.
  struct Group {
    std::vector<double> time;
    std::vector<double> constraints;
    std::vector<double> weight;
  };
  std::map<int, Group> groups;
  for (const auto &r : reports) {
    int bucket = (std::max(1, r.loc_lines) - 1) / 25;
    auto &g = groups[bucket];
    g.time.push_back(r.t_constraints + r.t_solve);
    g.constraints.push_back(r.constraint_count);
    g.weight.push_back(r.total_weight);
  }
  std::cout << "\nlines        n   constraints (min/med/max)   weight (min/med/max)   time s (min/med/max)\n";
  for (auto &[bucket, g] : groups) {
    auto stats = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      char buf[64];
      std::snprintf(buf, sizeof buf, "%g/%g/%g", v.front(),
                    median(v), v.back());
      return std::string(buf);
    };
    std::printf("%3d-%-3d %6zu   %-27s %-22s %s\n", bucket * 25 + 1,
                bucket * 25 + 25, g.time.size(), stats(g.constraints).c_str(),
                stats(g.weight).c_str(), stats(g.time).c_str());
  }
  return 0;
}
