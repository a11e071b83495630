#include "bdim/sat_solver.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "bdim/error.hpp"

namespace bdim {

std::string_view to_string(SatStatus status) {
  switch (status) {
    case SatStatus::Sat: return "SATISFIABLE";
    case SatStatus::Unsat: return "UNSATISFIABLE";
    case SatStatus::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

// Literal code 2v + sign, sign 1 meaning negated.
using Lit = std::uint32_t;
constexpr Lit encode(int dimacs) { return dimacs > 0 ? 2U * dimacs : 2U * -dimacs + 1; }
constexpr Lit negate(Lit l) { return l ^ 1U; }
constexpr std::uint32_t var_of(Lit l) { return l >> 1; }

class Dpll {
 public:
  explicit Dpll(const CnfInstance& cnf)
      : vars_(cnf.variable_count), value_(vars_ + 1, kUnassigned), watches_(2 * (vars_ + 1)) {
    std::vector<std::uint64_t> pos(vars_ + 1, 0), neg(vars_ + 1, 0);
    for (const auto& raw : cnf.clauses) {
      std::vector<Lit> clause;
      clause.reserve(raw.size());
      for (int d : raw) clause.push_back(encode(d));
      std::sort(clause.begin(), clause.end());
      clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
      bool tautology = false;
      for (std::size_t i = 1; i < clause.size(); ++i) tautology |= var_of(clause[i]) == var_of(clause[i - 1]);
      if (tautology) continue;
      for (Lit l : clause) ++((l & 1U) ? neg : pos)[var_of(l)];
      if (clause.empty()) {
        trivially_unsat_ = true;
      } else if (clause.size() == 1) {
        units_.push_back(clause[0]);
      } else {
        const auto idx = static_cast<std::uint32_t>(clauses_.size());
        watches_[clause[0]].push_back(idx);
        watches_[clause[1]].push_back(idx);
        clauses_.push_back(std::move(clause));
      }
    }
    branch_order_.resize(vars_);
    std::iota(branch_order_.begin(), branch_order_.end(), 1U);
    std::stable_sort(branch_order_.begin(), branch_order_.end(), [&](std::uint32_t a, std::uint32_t b) {
      return pos[a] + neg[a] > pos[b] + neg[b];
    });
    prefer_true_.assign(vars_ + 1, false);
    for (std::uint32_t v = 1; v <= vars_; ++v) prefer_true_[v] = pos[v] >= neg[v];
  }

  SatResult solve(std::uint64_t conflict_limit) {
    SatResult result;
    if (trivially_unsat_) return unsat(result);
    for (Lit u : units_) {
      if (lit_false(u)) return unsat(result);
      if (!lit_true(u)) assign(u);
    }
    while (true) {
      if (!propagate()) {
        ++result.conflicts;
        if (conflict_limit != 0 && result.conflicts >= conflict_limit) {
          result.status = SatStatus::Unknown;
          return result;
        }
        if (!backtrack()) return unsat(result);
        continue;
      }
      const auto next = pick_branch();
      if (next == 0) break;
      level_start_.push_back(trail_.size());
      level_flipped_.push_back(false);
      assign(prefer_true_[next] ? 2U * next : 2U * next + 1);
    }
    result.status = SatStatus::Sat;
    result.assignment.assign(vars_ + 1, false);
    for (std::uint32_t v = 1; v <= vars_; ++v) result.assignment[v] = value_[v] == 1;
    return result;
  }

 private:
  static constexpr std::int8_t kUnassigned = -1;

  static SatResult& unsat(SatResult& r) {
    r.status = SatStatus::Unsat;
    r.verified = true;
    return r;
  }

  bool lit_true(Lit l) const { return value_[var_of(l)] == static_cast<std::int8_t>(1 - (l & 1U)); }
  bool lit_false(Lit l) const { return value_[var_of(l)] == static_cast<std::int8_t>(l & 1U); }

  void assign(Lit l) {
    value_[var_of(l)] = static_cast<std::int8_t>(1 - (l & 1U));
    trail_.push_back(l);
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const Lit falsified = negate(trail_[qhead_++]);
      auto& list = watches_[falsified];
      std::size_t keep = 0;
      for (std::size_t w = 0; w < list.size(); ++w) {
        const auto ci = list[w];
        auto& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_true(c[0])) {
          list[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (!lit_false(c[k])) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        list[keep++] = ci;
        if (lit_false(c[0])) {
          for (std::size_t r = w + 1; r < list.size(); ++r) list[keep++] = list[r];
          list.resize(keep);
          qhead_ = trail_.size();
          return false;
        }
        assign(c[0]);
      }
      list.resize(keep);
    }
    return true;
  }

  // Undo to the deepest decision not yet flipped and take its other branch.
  bool backtrack() {
    while (!level_start_.empty()) {
      const auto start = level_start_.back();
      const bool flipped = level_flipped_.back();
      const Lit decision = trail_[start];
      while (trail_.size() > start) {
        value_[var_of(trail_.back())] = kUnassigned;
        trail_.pop_back();
      }
      qhead_ = trail_.size();
      level_start_.pop_back();
      level_flipped_.pop_back();
      if (!flipped) {
        level_start_.push_back(trail_.size());
        level_flipped_.push_back(true);
        assign(negate(decision));
        return true;
      }
    }
    return false;
  }

  std::uint32_t pick_branch() const {
    for (auto v : branch_order_) {
      if (value_[v] == kUnassigned) return v;
    }
    return 0;
  }

  std::uint32_t vars_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<Lit> units_;
  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
  std::vector<std::size_t> level_start_;
  std::vector<bool> level_flipped_;
  std::vector<std::uint32_t> branch_order_;
  std::vector<bool> prefer_true_;
  bool trivially_unsat_ = false;
};

}  // namespace

SatResult internal_sat_solve(const CnfInstance& cnf, std::uint64_t conflict_limit) {
  Dpll solver(cnf);
  SatResult result = solver.solve(conflict_limit);
  if (result.status == SatStatus::Sat) {
    if (first_falsified_clause(cnf, result.assignment)) {
      throw Error(ErrorCode::ModelCheckFailed, "internal solver produced a non-model");
    }
    result.verified = true;
  }
  return result;
}

SatResult interpret_solver_output(const CnfInstance& cnf, std::string_view output) {
  SatResult result;
  bool have_status = false;
  std::vector<bool> assignment(cnf.variable_count + 1, false);
  std::istringstream in{std::string(output)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      const auto status = line.substr(2);
      if (status.rfind("SATISFIABLE", 0) == 0) {
        result.status = SatStatus::Sat;
      } else if (status.rfind("UNSATISFIABLE", 0) == 0) {
        result.status = SatStatus::Unsat;
      } else if (status.rfind("UNKNOWN", 0) == 0) {
        result.status = SatStatus::Unknown;
      } else {
        throw Error(ErrorCode::UnparseableOutput, "unknown status line: " + line);
      }
      have_status = true;
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream ls(line.substr(1));
      long long lit = 0;
      while (ls >> lit) {
        if (lit == 0) continue;
        const auto v = static_cast<unsigned long long>(lit < 0 ? -lit : lit);
        if (v > cnf.variable_count) {
          throw Error(ErrorCode::UnparseableOutput, "model mentions variable " + std::to_string(v));
        }
        assignment[v] = lit > 0;
      }
      if (!ls.eof()) throw Error(ErrorCode::UnparseableOutput, "bad value line: " + line);
    }
  }
  if (!have_status) throw Error(ErrorCode::UnparseableOutput, "solver output has no status line");
  if (result.status == SatStatus::Sat) {
    if (const auto bad = first_falsified_clause(cnf, assignment)) {
      throw Error(ErrorCode::ModelCheckFailed, "claimed model falsifies clause " + std::to_string(*bad + 1));
    }
    result.assignment = std::move(assignment);
    result.verified = true;
  }
  return result;
}

SatResult run_external_solver(const CnfInstance& cnf, const std::string& command_template) {
  namespace fs = std::filesystem;
  std::string path_template = (fs::temp_directory_path() / "bdim-XXXXXX.cnf").string();
  const int fd = ::mkstemps(path_template.data(), 4);
  if (fd < 0) throw Error(ErrorCode::IoError, "cannot create temporary DIMACS file");
  ::close(fd);
  const std::string path = path_template;
  {
    std::ofstream out(path);
    write_dimacs(cnf, out);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  }

  std::string command = command_template;
  const auto at = command.find("{cnf}");
  if (at == std::string::npos) {
    command += " '" + path + "'";
  } else {
    command.replace(at, 5, "'" + path + "'");
  }

  std::string output;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) {
    fs::remove(path);
    throw Error(ErrorCode::SolverLaunchFailed, "cannot start: " + command);
  }
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
  const int status = ::pclose(pipe);
  fs::remove(path);
  if (status == -1 || (WIFEXITED(status) && WEXITSTATUS(status) == 127)) {
    throw Error(ErrorCode::SolverLaunchFailed, "solver command failed to launch: " + command);
  }
  return interpret_solver_output(cnf, output);
}

std::string format_solver_output(const SatResult& result, std::uint32_t variable_count) {
  std::ostringstream out;
  out << "s " << to_string(result.status) << '\n';
  if (result.status == SatStatus::Sat) {
    out << 'v';
    for (std::uint32_t v = 1; v <= variable_count; ++v) {
      const bool value = v < result.assignment.size() && result.assignment[v];
      out << ' ' << (value ? "" : "-") << v;
      if (v % 16 == 0 && v != variable_count) out << "\nv";
    }
    out << " 0\n";
  }
  return out.str();
}

}  // namespace bdim
