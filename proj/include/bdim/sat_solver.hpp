#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bdim/cnf.hpp"

namespace bdim {

enum class SatStatus { Sat, Unsat, Unknown };

std::string_view to_string(SatStatus status);

struct SatResult {
  SatStatus status = SatStatus::Unknown;
  /// assignment[v] for v in 1..variable_count; index 0 unused. Empty unless Sat.
  std::vector<bool> assignment;
  /// Sat: the model was checked against every clause. Unsat: the answer came
  /// from the internal complete search (external Unsat claims are unverified).
  bool verified = false;
  std::uint64_t conflicts = 0;
};

/// Complete DPLL: watched-literal unit propagation, chronological
/// backtracking, static occurrence-count branching. Deterministic. Returns
/// Unknown once `conflict_limit` conflicts have been seen (0 = no limit).
SatResult internal_sat_solve(const CnfInstance& cnf, std::uint64_t conflict_limit = 0);

/// Parses SAT-competition output (`s ...` and `v ...` lines) and checks a
/// claimed model against every clause. Throws UnparseableOutput and ModelCheckFailed.
SatResult interpret_solver_output(const CnfInstance& cnf, std::string_view output);

/// Writes the instance to a temporary DIMACS file, runs `command_template`
/// with `{cnf}` replaced by its path (appended if absent), and interprets the
/// output. Throws SolverLaunchFailed, UnparseableOutput, ModelCheckFailed.
SatResult run_external_solver(const CnfInstance& cnf, const std::string& command_template);

/// SAT-competition rendering of a result, suitable for interpret_solver_output.
std::string format_solver_output(const SatResult& result, std::uint32_t variable_count);

}  // namespace bdim
