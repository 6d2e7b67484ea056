// Copyright 2026 The isinggeo Authors
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

#include "isinggeo/isinggeo.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <sstream>
#include <string>

#include "isinggeo/chain_simulator.hpp"
#include "isinggeo/geodesic_solver.hpp"
#include "isinggeo/reports.hpp"
#include "isinggeo/sequence_builder.hpp"
#include "isinggeo/serialization.hpp"

struct ig_geodesic {
  isinggeo::GeodesicSolution solution;
};

struct ig_sequence {
  isinggeo::PulseSequence seq;
};

struct ig_result {
  isinggeo::PulseSequence seq;
  isinggeo::SimulationResult first;
  std::vector<isinggeo::TransferOutcome> outcomes;
  std::vector<std::string> labels;
};

namespace {

using namespace isinggeo;

thread_local std::string g_last_error;

ig_status fail(ig_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
ig_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const NoRootError& e) {
    return fail(IG_ERR_NO_ROOT, e.what());
  } catch (const ParseError& e) {
    return fail(IG_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(IG_ERR_PARSE, e.what());
  } catch (const NumericError& e) {
    return fail(IG_ERR_NUMERIC, e.what());
  } catch (const std::out_of_range& e) {
    return fail(IG_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(IG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(IG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(IG_ERR_INTERNAL, "unknown error");
  }
}

#define IG_REQUIRE(p) \
  if ((p) == nullptr) return fail(IG_ERR_NULL_ARGUMENT, #p " is null")

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SolverOptions solver_options(const ig_solver_options* o) {
  SolverOptions s;
  if (o != nullptr && o->dt > 0.0) s.dt = o->dt;
  return s;
}

std::optional<std::pair<double, double>> bracket(const ig_solver_options* o) {
  if (o == nullptr || o->has_bracket == 0) return std::nullopt;
  return std::pair{o->f_lo, o->f_hi};
}

GeodesicSet solve_set(const ig_solver_options* o) {
  if (o != nullptr && o->has_bracket != 0) throw std::invalid_argument("a bracket applies to a single step only");
  return solve_all(solver_options(o));
}

SimulationOptions sim_options(const ig_sim_options* o, int n) {
  SimulationOptions s;
  if (o != nullptr) {
    s.slice_refinement = o->slice_refinement > 0 ? o->slice_refinement : 1;
    s.report_dt = o->report_dt;
    s.decompose = o->decompose != 0;
    if (o->basis != nullptr) {
      std::string text(o->basis);
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const std::size_t next = text.find(';', pos);
        const std::string piece = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (piece.find_first_not_of(" \t") != std::string::npos) s.basis.push_back(OperatorSum::parse(piece));
        if (next == std::string::npos) break;
        pos = next + 1;
      }
    }
  }
  if (s.report_dt > 0.0 && s.basis.empty()) s.basis = order_basis(n);
  return s;
}

std::vector<std::string> labels_of(const std::vector<OperatorSum>& basis) {
  std::vector<std::string> l;
  for (const auto& b : basis) l.push_back(b.to_string());
  return l;
}

}  // namespace

extern "C" {

const char* ig_version(void) { return "0.1.0"; }

const char* ig_last_error(void) { return g_last_error.c_str(); }

const char* ig_status_name(ig_status status) {
  switch (status) {
    case IG_OK: return "ok";
    case IG_ERR_NULL_ARGUMENT: return "null argument";
    case IG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case IG_ERR_PARSE: return "parse error";
    case IG_ERR_NUMERIC: return "numeric error";
    case IG_ERR_NO_ROOT: return "no root";
    case IG_ERR_OUT_OF_RANGE: return "out of range";
    case IG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ig_string_free(char* s) { std::free(s); }

ig_status ig_geodesic_solve(const char* step, const ig_solver_options* options, ig_geodesic** out) {
  IG_REQUIRE(step);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = nullptr;
    auto g = std::make_unique<ig_geodesic>();
    g->solution = solve_step(parse_step(step), bracket(options), solver_options(options));
    *out = g.release();
    return IG_OK;
  });
}

void ig_geodesic_free(ig_geodesic* g) { delete g; }

ig_status ig_geodesic_f(const ig_geodesic* g, double* out) {
  IG_REQUIRE(g);
  IG_REQUIRE(out);
  *out = g->solution.f;
  return IG_OK;
}

ig_status ig_geodesic_tau(const ig_geodesic* g, double* out) {
  IG_REQUIRE(g);
  IG_REQUIRE(out);
  *out = g->solution.tau;
  return IG_OK;
}

ig_status ig_geodesic_miss(const ig_geodesic* g, double* out) {
  IG_REQUIRE(g);
  IG_REQUIRE(out);
  *out = g->solution.miss;
  return IG_OK;
}

ig_status ig_geodesic_to_json(const ig_geodesic* g, double j_hz, char** out) {
  IG_REQUIRE(g);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(solution_to_json(g->solution, ChainSpec(2, j_hz)).dump(2));
    return IG_OK;
  });
}

ig_status ig_geodesic_export_pulse(const ig_geodesic* g, size_t samples, int* near_constant, char** json_out,
                                   char** csv_out) {
  IG_REQUIRE(g);
  return guarded([&] {
    const ExportedPulse ex = export_pulse(g->solution, samples);
    if (near_constant != nullptr) *near_constant = ex.near_constant ? 1 : 0;
    if (json_out != nullptr) {
      Json j = pulse_to_json(ex.pulse);
      j["step"] = to_string(g->solution.step);
      j["near_constant"] = ex.near_constant;
      j["singular_samples"] = ex.singular_samples;
      *json_out = dup_string(j.dump(2));
    }
    if (csv_out != nullptr) *csv_out = dup_string(pulse_csv(ex.pulse));
    return IG_OK;
  });
}

ig_status ig_geodesic_replay_miss(const ig_geodesic* g, size_t samples, double* out) {
  IG_REQUIRE(g);
  IG_REQUIRE(out);
  return guarded([&] {
    const ExportedPulse ex = export_pulse(g->solution, samples);
    *out = (replay_block(g->solution, ex.pulse) - block_target(g->solution.step)).norm();
    return IG_OK;
  });
}

ig_status ig_sequence_build(const char* kind, int n, int k, double j_hz, const ig_solver_options* options,
                            ig_sequence** out) {
  IG_REQUIRE(kind);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = nullptr;
    const std::string name(kind);
    std::optional<PulseSequence> seq;
    if (name == "conventional") {
      seq = conventional_cascade(n, j_hz);
    } else if (name == "inept") {
      seq = inept_cascade(n, j_hz);
    } else if (name == "inept-step") {
      seq = inept_step(n, k, j_hz);
    } else if (name == "lambda-prep") {
      seq = lambda_preparation(n, j_hz);
    } else if (name == "lambda-collapse") {
      seq = lambda_collapse(n, j_hz);
    } else if (name == "geodesic-order") {
      // Reject short chains before spending time in the solver.
      if (n < 4) throw std::invalid_argument("geodesic order sequence needs n >= 4");
      seq = geodesic_order_sequence(n, solve_set(options), j_hz);
    } else if (name == "lambda-step" || name == "lambda-transfer" || name == "pair-encoding" ||
               name == "pair-step") {
      const GeodesicSolution inter =
          solve_step(GeodesicStep::intermediate, bracket(options), solver_options(options));
      if (name == "lambda-step") seq = lambda_propagation_step(n, k, inter, j_hz);
      if (name == "lambda-transfer") seq = lambda_transfer(n, inter, j_hz);
      if (name == "pair-encoding") seq = pair_encoding(n, inter, j_hz);
      if (name == "pair-step") seq = pair_propagation_step(n, k, inter, j_hz);
    } else {
      throw std::invalid_argument("unknown sequence kind '" + name + "'");
    }
    *out = new ig_sequence{std::move(*seq)};
    return IG_OK;
  });
}

ig_status ig_sequence_from_json(const char* json, ig_sequence** out) {
  IG_REQUIRE(json);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = nullptr;
    *out = new ig_sequence{sequence_from_json(Json::parse(json))};
    return IG_OK;
  });
}

void ig_sequence_free(ig_sequence* s) { delete s; }

ig_status ig_sequence_to_json(const ig_sequence* s, char** out) {
  IG_REQUIRE(s);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(sequence_to_json(s->seq).dump(2));
    return IG_OK;
  });
}

ig_status ig_sequence_duration(const ig_sequence* s, double* out) {
  IG_REQUIRE(s);
  IG_REQUIRE(out);
  *out = s->seq.duration();
  return IG_OK;
}

ig_status ig_sequence_transfer_count(const ig_sequence* s, int* out) {
  IG_REQUIRE(s);
  IG_REQUIRE(out);
  *out = static_cast<int>(s->seq.transfers().size());
  return IG_OK;
}

static ig_status simulate_transfers(const PulseSequence& seq, const std::vector<Transfer>& transfers,
                                    const ig_sim_options* options, ig_result** out) {
  return guarded([&] {
    *out = nullptr;
    if (transfers.empty()) throw std::invalid_argument("sequence carries no transfer to simulate");
    auto r = std::make_unique<ig_result>(ig_result{seq, {}, {}, {}});
    const SimulationOptions opt = sim_options(options, seq.chain().n());
    r->labels = labels_of(opt.basis);
    for (std::size_t i = 0; i < transfers.size(); ++i) {
      const auto& t = transfers[i];
      SimulationOptions o = opt;
      if (i > 0) o.report_dt = 0.0;
      SimulationResult res = propagate(seq, t.initial, o);
      r->outcomes.push_back({t.label, t.initial.to_string(), t.target.to_string(), fidelity(res, t.target)});
      if (i == 0) r->first = std::move(res);
    }
    *out = r.release();
    return IG_OK;
  });
}

ig_status ig_simulate(const ig_sequence* s, const ig_sim_options* options, ig_result** out) {
  IG_REQUIRE(s);
  IG_REQUIRE(out);
  return simulate_transfers(s->seq, s->seq.transfers(), options, out);
}

ig_status ig_simulate_operator(const ig_sequence* s, const char* initial, const char* target,
                               const ig_sim_options* options, ig_result** out) {
  IG_REQUIRE(s);
  IG_REQUIRE(initial);
  IG_REQUIRE(target);
  IG_REQUIRE(out);
  std::vector<Transfer> t;
  const ig_status st = guarded([&] {
    t.push_back({"custom", OperatorSum::parse(initial), OperatorSum::parse(target)});
    return IG_OK;
  });
  if (st != IG_OK) return st;
  return simulate_transfers(s->seq, t, options, out);
}

void ig_result_free(ig_result* r) { delete r; }

ig_status ig_result_transfer_count(const ig_result* r, int* out) {
  IG_REQUIRE(r);
  IG_REQUIRE(out);
  *out = static_cast<int>(r->outcomes.size());
  return IG_OK;
}

ig_status ig_result_fidelity(const ig_result* r, int index, double* out) {
  IG_REQUIRE(r);
  IG_REQUIRE(out);
  if (index < 0 || index >= static_cast<int>(r->outcomes.size())) {
    return fail(IG_ERR_OUT_OF_RANGE, "transfer index out of range");
  }
  *out = r->outcomes[static_cast<std::size_t>(index)].fidelity;
  return IG_OK;
}

ig_status ig_result_norm_drift(const ig_result* r, double* out) {
  IG_REQUIRE(r);
  IG_REQUIRE(out);
  *out = r->first.norm_drift;
  return IG_OK;
}

ig_status ig_result_to_json(const ig_result* r, char** out) {
  IG_REQUIRE(r);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(result_to_json(r->seq, r->first, r->outcomes).dump(2));
    return IG_OK;
  });
}

ig_status ig_result_profile_csv(const ig_result* r, char** out) {
  IG_REQUIRE(r);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(profile_csv(r->first.profile, r->labels));
    return IG_OK;
  });
}

ig_status ig_compare(int n_min, int n_max, double j_hz, int simulate, const ig_solver_options* options,
                     const char* format, char** out) {
  IG_REQUIRE(format);
  IG_REQUIRE(out);
  return guarded([&] {
    if (n_min > n_max) throw std::invalid_argument("empty chain-length range");
    if (n_min < 2) throw std::invalid_argument("chain length must be >= 2");
    const GeodesicSet set = solve_set(options);
    std::vector<ComparisonReport> reps;
    for (int n = n_min; n <= n_max; ++n) reps.push_back(compare_methods(n, set, j_hz, simulate != 0));
    const std::string f(format);
    if (f == "json") {
      *out = dup_string(comparisons_to_json(reps).dump(2));
    } else if (f == "csv") {
      *out = dup_string(comparison_csv(reps));
    } else if (f == "table") {
      *out = dup_string(comparison_table(reps));
    } else {
      throw std::invalid_argument("unknown format '" + f + "'");
    }
    return IG_OK;
  });
}

ig_status ig_verify(const char* format, int* all_passed, char** out) {
  IG_REQUIRE(format);
  IG_REQUIRE(out);
  return guarded([&] {
    const std::string f(format);
    if (f != "json" && f != "table") throw std::invalid_argument("unknown format '" + f + "'");
    const auto checks = run_invariant_suite(solve_all());
    bool all = true;
    for (const auto& c : checks) all = all && c.passed;
    if (all_passed != nullptr) *all_passed = all ? 1 : 0;
    *out = dup_string(f == "json" ? checks_to_json(checks).dump(2) : checks_table(checks));
    return IG_OK;
  });
}

ig_status ig_operator_normalize(const char* text, char** out) {
  IG_REQUIRE(text);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(OperatorSum::parse(text).to_string());
    return IG_OK;
  });
}

ig_status ig_operator_inner(const char* a, const char* b, int n, double* out) {
  IG_REQUIRE(a);
  IG_REQUIRE(b);
  IG_REQUIRE(out);
  return guarded([&] {
    *out = inner_product(OperatorSum::parse(a), OperatorSum::parse(b), ChainSpec(n));
    return IG_OK;
  });
}

}  // extern "C"
