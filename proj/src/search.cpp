#include "bdim/search.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>

#include "bdim/error.hpp"

namespace bdim {

// ---------------------------------------------------------------------------
// exact_dim

ExactDimResult exact_dim(const Poset& p, unsigned d_max, const ExactDimGuards& guards) {
  const auto n = p.size();
  if (!guards.force && n > guards.max_elements) {
    throw Error(ErrorCode::GuardExceeded, "exact_dim limited to " + std::to_string(guards.max_elements) +
                                              " elements (override with force)");
  }
  const auto limit = guards.force ? std::numeric_limits<std::size_t>::max() : guards.max_extensions;
  auto all = linear_extensions(p, limit);
  if (all.limit_exceeded) {
    throw Error(ErrorCode::GuardExceeded, "more than " + std::to_string(limit) + " linear extensions");
  }
  const auto& ext = all.orders;

  // Each x not<= y must be reversed (y before x) by some chosen extension.
  std::vector<std::pair<std::size_t, std::size_t>> targets;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && !p.leq(x, y)) targets.emplace_back(x, y);
    }
  }
  std::vector<std::vector<std::uint32_t>> reversers(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t e = 0; e < ext.size(); ++e) {
      if (ext[e].rank(targets[t].second) < ext[e].rank(targets[t].first)) {
        reversers[t].push_back(static_cast<std::uint32_t>(e));
      }
    }
  }

  ExactDimResult result;
  std::vector<std::uint32_t> chosen;
  std::vector<std::uint32_t> cover_count(targets.size(), 0);

  std::function<bool(unsigned)> search = [&](unsigned budget) -> bool {
    std::size_t pick = targets.size();
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (cover_count[t] == 0 && (pick == targets.size() || reversers[t].size() < reversers[pick].size())) pick = t;
    }
    if (pick == targets.size()) return true;
    if (budget == 0) return false;
    for (auto e : reversers[pick]) {
      chosen.push_back(e);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (ext[e].rank(targets[t].second) < ext[e].rank(targets[t].first)) ++cover_count[t];
      }
      if (search(budget - 1)) return true;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (ext[e].rank(targets[t].second) < ext[e].rank(targets[t].first)) --cover_count[t];
      }
      chosen.pop_back();
    }
    return false;
  };

  for (unsigned d = 1; d <= d_max; ++d) {
    chosen.clear();
    std::fill(cover_count.begin(), cover_count.end(), 0);
    if (search(d)) {
      // Pad with the first extension when fewer than d were needed (only at d = 1).
      while (chosen.size() < d) chosen.push_back(0);
      result.dimension = d;
      for (auto e : chosen) result.witness.push_back(ext[e]);
      return result;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// phi_consistent / exact_bdim

PhiConsistency phi_consistent(const Poset& p, std::span<const LinearOrder> orders, VerifyMode mode) {
  const auto d = static_cast<unsigned>(orders.size());
  const auto n = p.size();
  for (const auto& o : orders) {
    if (o.size() != n) throw Error(ErrorCode::SizeMismatch, "order and poset sizes differ");
  }
  TruthTable table(d);
  // Witness pair per tuple index; x == SIZE_MAX marks an unconstrained tuple.
  constexpr auto kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> witness(table.size(), {kFree, kFree});
  PhiConsistency result;

  if (mode == VerifyMode::ReflexiveInclusive && n > 0) {
    table.set(table.all_ones_index());
    witness[table.all_ones_index()] = {0, 0};
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      std::uint32_t t = 0;
      for (unsigned i = 0; i < d; ++i) t |= static_cast<std::uint32_t>(orders[i].precedes_or_equal(x, y)) << i;
      const bool answer = p.leq(x, y);
      if (witness[t].first == kFree) {
        witness[t] = {x, y};
        table.set(t, answer);
      } else if (table[t] != answer) {
        result.pair_a = witness[t];
        result.pair_b = {x, y};
        return result;
      }
    }
  }
  result.table = std::move(table);
  return result;
}

ExactBdimResult exact_bdim(const Poset& p, unsigned d_max, VerifyMode mode, const ExactBdimOptions& options) {
  const auto n = p.size();
  if (!options.force && (n > options.max_elements || d_max > options.max_d)) {
    throw Error(ErrorCode::GuardExceeded, "exact_bdim limited to |P| <= " + std::to_string(options.max_elements) +
                                              " and d <= " + std::to_string(options.max_d) +
                                              " (override with force)");
  }
  if (d_max > TruthTable::kMaxArity) throw Error(ErrorCode::GuardExceeded, "d exceeds the truth-table arity cap");

  std::vector<LinearOrder> perms;
  {
    std::vector<std::uint32_t> seq(n);
    std::iota(seq.begin(), seq.end(), 0U);
    do {
      perms.push_back(LinearOrder::from_sequence(seq));
    } while (std::next_permutation(seq.begin(), seq.end()));
  }

  // before[k][pair] = [x <=_k y] for the pair-th ordered pair x != y.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) pairs.emplace_back(x, y);
    }
  }
  std::vector<std::vector<std::uint8_t>> before(perms.size(), std::vector<std::uint8_t>(pairs.size()));
  for (std::size_t k = 0; k < perms.size(); ++k) {
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      before[k][q] = perms[k].precedes_or_equal(pairs[q].first, pairs[q].second);
    }
  }
  std::vector<std::uint8_t> answers(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) answers[q] = p.leq(pairs[q].first, pairs[q].second);

  ExactBdimResult result;
  std::vector<std::size_t> pick;
  // 0 = unconstrained, 1 = must be 0, 2 = must be 1
  std::vector<std::uint8_t> required;
  std::vector<std::uint32_t> tuples(pairs.size());

  auto consistent = [&](unsigned d) {
    required.assign(std::size_t{1} << d, 0);
    if (mode == VerifyMode::ReflexiveInclusive && n > 0) required.back() = 2;
    std::fill(tuples.begin(), tuples.end(), 0);
    for (unsigned i = 0; i < d; ++i) {
      const auto& b = before[pick[i]];
      for (std::size_t q = 0; q < pairs.size(); ++q) tuples[q] |= static_cast<std::uint32_t>(b[q]) << i;
    }
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const std::uint8_t want = answers[q] ? 2 : 1;
      auto& slot = required[tuples[q]];
      if (slot == 0) {
        slot = want;
      } else if (slot != want) {
        return false;
      }
    }
    return true;
  };

  std::function<bool(unsigned, std::size_t)> enumerate = [&](unsigned d, std::size_t from) -> bool {
    if (pick.size() == d) return consistent(d);
    for (std::size_t k = options.symmetry_reduction ? from : 0; k < perms.size(); ++k) {
      pick.push_back(k);
      if (enumerate(d, k)) return true;
      pick.pop_back();
    }
    return false;
  };

  for (unsigned d = 1; d <= d_max; ++d) {
    pick.clear();
    if (!enumerate(d, 0)) continue;
    std::vector<LinearOrder> orders;
    for (auto k : pick) orders.push_back(perms[k]);
    auto phi = phi_consistent(p, orders, mode);
    BooleanRealizer witness(n, std::move(orders), std::move(*phi.table));
    if (!verify(p, witness, {mode, 1}).ok()) {
      throw Error(ErrorCode::DecodeInconsistent, "exact_bdim witness failed verification");
    }
    result.dimension = d;
    result.witness = std::move(witness);
    return result;
  }
  return result;
}

// ---------------------------------------------------------------------------
// decode / pipeline

BooleanRealizer decode_model(const CnfInstance& cnf, const std::vector<bool>& assignment, const Poset& p, unsigned d,
                             const std::optional<TruthTable>& fixed_phi, VerifyMode mode) {
  const auto n = p.size();
  auto value = [&](std::size_t var) { return var < assignment.size() && assignment[var]; };

  // before[i][x * n + y], x < y: -1 unknown.
  std::vector<std::vector<std::int8_t>> before(d, std::vector<std::int8_t>(n * n, -1));
  TruthTable phi(d);
  std::vector<bool> phi_seen(phi.size(), false);
  for (std::size_t k = 0; k < cnf.varmap.size(); ++k) {
    const auto& v = cnf.varmap[k];
    if (v.kind == VarMeaning::Kind::Order) {
      if (v.order >= d || v.y >= n || v.x >= v.y) {
        throw Error(ErrorCode::DecodeInconsistent, "order variable " + std::to_string(k + 1) + " out of range");
      }
      before[v.order][v.x * n + v.y] = value(k + 1) ? 1 : 0;
    } else if (v.kind == VarMeaning::Kind::Phi) {
      if (v.tuple >= phi.size()) {
        throw Error(ErrorCode::DecodeInconsistent, "phi variable " + std::to_string(k + 1) + " out of range");
      }
      phi.set(v.tuple, value(k + 1));
      phi_seen[v.tuple] = true;
    }
  }
  if (fixed_phi) {
    if (fixed_phi->arity() != d) throw Error(ErrorCode::FixedPhiArityMismatch, "fixed phi arity differs from d");
    phi = *fixed_phi;
  } else if (std::find(phi_seen.begin(), phi_seen.end(), false) != phi_seen.end()) {
    throw Error(ErrorCode::DecodeInconsistent, "varmap lacks some phi variables");
  }

  std::vector<LinearOrder> orders;
  orders.reserve(d);
  for (unsigned i = 0; i < d; ++i) {
    std::vector<std::uint32_t> rank(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        const auto b = before[i][x * n + y];
        if (b < 0) throw Error(ErrorCode::DecodeInconsistent, "varmap lacks a pair variable of order " +
                                                                  std::to_string(i + 1));
        ++rank[b ? y : x];
      }
    }
    try {
      orders.push_back(LinearOrder::from_ranks(std::move(rank)));
    } catch (const Error&) {
      throw Error(ErrorCode::DecodeInconsistent, "order " + std::to_string(i + 1) + " is not transitive");
    }
  }
  BooleanRealizer realizer(n, std::move(orders), std::move(phi));
  const auto outcome = verify(p, realizer, {mode, 1});
  if (!outcome.ok()) {
    const auto& c = *outcome.counterexample;
    throw Error(ErrorCode::DecodeInconsistent, "decoded realizer fails at (" + std::to_string(c.x) + "," +
                                                   std::to_string(c.y) + ")");
  }
  return realizer;
}

SearchReport search_realizer(const Poset& p, unsigned d, const std::optional<TruthTable>& fixed_phi,
                             const SearchEngine& engine, VerifyMode mode, const EncodeGuards& guards) {
  const CnfInstance cnf = encode_bdim_sat(p, d, fixed_phi, mode, guards);
  SearchReport report;
  report.variable_count = cnf.variable_count;
  report.clause_count = cnf.clauses.size();

  SatResult sat;
  switch (engine.kind) {
    case SearchEngine::Kind::EmitOnly: {
      report.dimacs_path = engine.argument;
      report.varmap_path = engine.argument + ".varmap";
      std::ofstream dimacs(report.dimacs_path);
      write_dimacs(cnf, dimacs);
      std::ofstream varmap(report.varmap_path);
      write_varmap(cnf, varmap);
      if (!dimacs || !varmap) throw Error(ErrorCode::IoError, "cannot write " + report.dimacs_path);
      return report;
    }
    case SearchEngine::Kind::Internal:
      sat = internal_sat_solve(cnf, engine.conflict_limit);
      break;
    case SearchEngine::Kind::External:
      sat = run_external_solver(cnf, engine.argument);
      break;
  }
  report.status = sat.status;
  report.verified = sat.verified;
  if (sat.status == SatStatus::Sat) {
    report.realizer = decode_model(cnf, sat.assignment, p, d, fixed_phi, mode);
  }
  return report;
}

}  // namespace bdim
