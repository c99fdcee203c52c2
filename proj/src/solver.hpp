#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "encode.hpp"
#include "types.hpp"

namespace tyro {

struct SolverConfig {
  std::vector<std::string> command; // executable plus arguments
  double timeout_sec = 100.0;
  Encoding encoding = Encoding::Flat;
};

// $TYRO_SOLVER, else `tyro-z3` next to the running executable, else `z3`.
std::vector<std::string> default_solver_command();

struct ErrorSource {
  std::set<int> removed;
  int total_weight = 0;
  std::map<int, std::pair<SourceRange, int>> per_location; // range, weight
};

// Writes the script to the solver's stdin and captures its stdout,
// enforcing the timeout by killing the process.
std::string run_solver(const std::string &script, const SolverConfig &cfg);

// Extracts the error source from the solver's verdict, objective and
// model. Tolerates objectives before or after the model block.
ErrorSource parse_result(const std::string &raw, const IrDoc &doc,
                         const LocForest &forest);

// Full solving pipeline over a document; `hard` forces locations to
// weight 0. Retries once with :produce-models if the model is missing.
ErrorSource localize(const IrDoc &doc, const SolverConfig &cfg,
                     const std::vector<int> &hard = {});

// Re-solve with `removed` forced false and everything else forced true;
// true iff the residual hard problem is satisfiable.
bool verify_error_source(const IrDoc &doc, const SolverConfig &cfg,
                         const std::vector<int> &removed,
                         const std::vector<int> &hard = {});

} // namespace tyro
