#include "tyro/tyro.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "classical.hpp"
#include "encode.hpp"
#include "error.hpp"
#include "evalkit.hpp"
#include "infer.hpp"
#include "ir.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "solver.hpp"

using namespace tyro;

namespace {

thread_local std::string g_last_error;

tyro_status set_error(tyro_status code, const std::string &msg) {
  g_last_error = msg;
  return code;
}

// Runs `fn`, translating thrown Errors into status codes.
template <class Fn> tyro_status guarded(Fn &&fn) {
  try {
    fn();
    g_last_error.clear();
    return TYRO_OK;
  } catch (const Error &e) {
    std::string msg = e.what();
    if (e.where) msg += " at " + e.where->str();
    return set_error(e.code, msg);
  } catch (const std::exception &e) {
    return set_error(TYRO_ERR_INTERNAL, e.what());
  }
}

char *dup_string(const std::string &s) {
  char *p = (char *)std::malloc(s.size() + 1);
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

Prelude prelude_from(const char *text) {
  return parse_prelude(text ? text : default_prelude());
}

IrDoc ir_from(const char *ir_text) {
  if (!ir_text) fail(TYRO_ERR_INVALID_ARGUMENT, "ir_text is NULL");
  IrDoc doc = parse_ir(ir_text);
  validate(doc);
  return doc;
}

tyro_range to_c(const SourceRange &r) {
  return {r.start.line, r.start.col, r.end.line, r.end.col};
}

SourceRange from_c(const tyro_range &r) {
  return {{r.start_line, r.start_col}, {r.end_line, r.end_col}};
}

SolverConfig config_from(const tyro_localize_opts *opts) {
  SolverConfig cfg;
  cfg.command = default_solver_command();
  if (opts) {
    if (opts->solver_cmd && *opts->solver_cmd) {
      cfg.command.clear();
      std::string cur;
      for (const char *p = opts->solver_cmd;; p++) {
        if (*p == '\0' || *p == ' ' || *p == '\t') {
          if (!cur.empty()) cfg.command.push_back(cur);
          cur.clear();
          if (*p == '\0') break;
        } else {
          cur += *p;
        }
      }
    }
    if (opts->timeout_sec > 0) cfg.timeout_sec = opts->timeout_sec;
    cfg.encoding =
        opts->encoding == TYRO_ENCODE_DEEP ? Encoding::Deep : Encoding::Flat;
  }
  return cfg;
}

std::vector<int> hard_from(const tyro_localize_opts *opts) {
  if (!opts || !opts->hard) return {};
  return {opts->hard, opts->hard + opts->hard_count};
}

} // namespace

struct tyro_result {
  ErrorSource src;
  std::vector<int> removed; // ascending
};

struct tyro_sources {
  MinSources src;
};

extern "C" {

const char *tyro_status_name(tyro_status s) {
  switch (s) {
  case TYRO_OK: return "ok";
  case TYRO_ERR_SYNTAX: return "syntax-error";
  case TYRO_ERR_UNBOUND: return "unbound-variable";
  case TYRO_ERR_IR_SYNTAX: return "ir-syntax-error";
  case TYRO_ERR_DANGLING_LOC: return "dangling-location";
  case TYRO_ERR_UNKNOWN_SCHEME: return "unknown-scheme";
  case TYRO_ERR_MALFORMED_LOCATIONS: return "malformed-locations";
  case TYRO_ERR_SOLVER_NOT_FOUND: return "solver-not-found";
  case TYRO_ERR_SOLVER_TIMEOUT: return "solver-timeout";
  case TYRO_ERR_SOLVER_CRASH: return "solver-crash";
  case TYRO_ERR_UNPARSEABLE_OUTPUT: return "unparseable-solver-output";
  case TYRO_ERR_HARD_CONFLICT: return "hard-conflict";
  case TYRO_ERR_TOO_LARGE: return "too-large";
  case TYRO_ERR_NO_ERROR_SOURCE: return "no-error-source";
  case TYRO_ERR_EMPTY_INPUT: return "empty-input";
  case TYRO_ERR_INVALID_ARGUMENT: return "invalid-argument";
  case TYRO_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char *tyro_last_error(void) { return g_last_error.c_str(); }

void tyro_free(void *p) { std::free(p); }

tyro_status tyro_source_to_ir(const char *source, const char *prelude,
                              char **ir_out) {
  return guarded([&] {
    if (!source || !ir_out)
      fail(TYRO_ERR_INVALID_ARGUMENT, "source and ir_out must be non-NULL");
    Program p = parse(source);
    assign_indices(p);
    *ir_out = dup_string(print_ir(make_ir(p, prelude_from(prelude))));
  });
}

tyro_status tyro_ir_normalize(const char *ir_text, char **out) {
  return guarded([&] {
    if (!out) fail(TYRO_ERR_INVALID_ARGUMENT, "out is NULL");
    *out = dup_string(print_ir(ir_from(ir_text)));
  });
}

tyro_status tyro_ir_stats(const char *ir_text, int *locations_out,
                          int *equalities_out, int *instantiations_out,
                          int *schemes_out) {
  return guarded([&] {
    IrDoc doc = ir_from(ir_text);
    int insts = 0;
    auto count = [&](const std::vector<Constraint> &cs) {
      for (const auto &c : cs)
        if (c.is_instantiation) insts++;
    };
    count(doc.constraints);
    for (const auto &s : doc.schemes) count(s.body);
    if (locations_out) *locations_out = (int)doc.locations.size();
    if (equalities_out) *equalities_out = doc.equality_count();
    if (instantiations_out) *instantiations_out = insts;
    if (schemes_out) *schemes_out = (int)doc.schemes.size();
  });
}

tyro_status tyro_ir_encode(const char *ir_text, tyro_encoding enc,
                           const int *hard, size_t hard_count,
                           char **smt_out) {
  return guarded([&] {
    if (!smt_out) fail(TYRO_ERR_INVALID_ARGUMENT, "smt_out is NULL");
    IrDoc doc = ir_from(ir_text);
    std::vector<int> hard_v;
    if (hard) hard_v.assign(hard, hard + hard_count);
    LocForest forest = weighted_forest(doc, hard_v);
    Encoding e = enc == TYRO_ENCODE_DEEP ? Encoding::Deep : Encoding::Flat;
    *smt_out = dup_string(encode(doc, forest, e));
  });
}

tyro_status tyro_localize_ir(const char *ir_text,
                             const tyro_localize_opts *opts,
                             tyro_result **out) {
  return guarded([&] {
    if (!out) fail(TYRO_ERR_INVALID_ARGUMENT, "out is NULL");
    IrDoc doc = ir_from(ir_text);
    auto *r = new tyro_result;
    try {
      r->src = localize(doc, config_from(opts), hard_from(opts));
    } catch (...) {
      delete r;
      throw;
    }
    r->removed.assign(r->src.removed.begin(), r->src.removed.end());
    *out = r;
  });
}

int tyro_result_total_weight(const tyro_result *r) {
  return r->src.total_weight;
}

size_t tyro_result_removed_count(const tyro_result *r) {
  return r->removed.size();
}

int tyro_result_removed_index(const tyro_result *r, size_t i) {
  return r->removed[i];
}

tyro_range tyro_result_removed_range(const tyro_result *r, size_t i) {
  return to_c(r->src.per_location.at(r->removed[i]).first);
}

int tyro_result_removed_weight(const tyro_result *r, size_t i) {
  return r->src.per_location.at(r->removed[i]).second;
}

void tyro_result_free(tyro_result *r) { delete r; }

tyro_status tyro_verify_error_source(const char *ir_text,
                                     const tyro_localize_opts *opts,
                                     const int *removed, size_t removed_count,
                                     int *ok_out) {
  return guarded([&] {
    if (!ok_out) fail(TYRO_ERR_INVALID_ARGUMENT, "ok_out is NULL");
    IrDoc doc = ir_from(ir_text);
    std::vector<int> removed_v;
    if (removed) removed_v.assign(removed, removed + removed_count);
    *ok_out = verify_error_source(doc, config_from(opts), removed_v,
                                  hard_from(opts))
                  ? 1
                  : 0;
  });
}

tyro_status tyro_oracle_ir(const char *ir_text, int max_locations,
                           tyro_sources **out) {
  return guarded([&] {
    if (!out) fail(TYRO_ERR_INVALID_ARGUMENT, "out is NULL");
    IrDoc doc = ir_from(ir_text);
    auto *s = new tyro_sources;
    try {
      s->src = brute_force_min_sources(doc,
                                       max_locations > 0 ? max_locations : 20);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

int tyro_sources_min_weight(const tyro_sources *s) { return s->src.min_weight; }

size_t tyro_sources_count(const tyro_sources *s) {
  return s->src.sources.size();
}

size_t tyro_sources_size(const tyro_sources *s, size_t k) {
  return s->src.sources[k].size();
}

int tyro_sources_index(const tyro_sources *s, size_t k, size_t i) {
  auto it = s->src.sources[k].begin();
  std::advance(it, (long)i);
  return *it;
}

void tyro_sources_free(tyro_sources *s) { delete s; }

tyro_status tyro_classical_infer(const char *source, const char *prelude,
                                 int *ok_out, tyro_range *blame_out) {
  return guarded([&] {
    if (!source || !ok_out)
      fail(TYRO_ERR_INVALID_ARGUMENT, "source and ok_out must be non-NULL");
    Program p = parse(source);
    assign_indices(p);
    ClassicalResult r = classical_infer(p, prelude_from(prelude));
    *ok_out = r.ok ? 1 : 0;
    if (!r.ok && blame_out) *blame_out = to_c(*r.blame);
  });
}

tyro_status tyro_classify(const tyro_range *reported, size_t reported_count,
                          const tyro_range *truth, size_t truth_count,
                          tyro_verdict *out) {
  return guarded([&] {
    if (!out) fail(TYRO_ERR_INVALID_ARGUMENT, "out is NULL");
    std::vector<SourceRange> rep, tru;
    for (size_t i = 0; i < reported_count; i++) rep.push_back(from_c(reported[i]));
    for (size_t i = 0; i < truth_count; i++) tru.push_back(from_c(truth[i]));
    *out = (tyro_verdict)(int)classify(rep, tru);
  });
}

} // extern "C"
