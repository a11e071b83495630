#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bdim/poset.hpp"
#include "bdim/realizer.hpp"
#include "bdim/truth_table.hpp"

namespace bdim {

/// What a CNF variable stands for.
struct VarMeaning {
  enum class Kind { Order, Phi, Auxiliary };
  Kind kind = Kind::Auxiliary;
  /// Order variables: 0-based order index, and x < y meaning "x before y".
  unsigned order = 0;
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  /// Phi variables: tuple index.
  std::uint32_t tuple = 0;

  bool operator==(const VarMeaning&) const = default;
};

/// Clauses over variables 1..variable_count, DIMACS sign convention.
struct CnfInstance {
  std::uint32_t variable_count = 0;
  std::vector<std::vector<int>> clauses;
  /// varmap[k - 1] describes variable k.
  std::vector<VarMeaning> varmap;

  const VarMeaning& meaning(int var) const { return varmap[static_cast<std::size_t>(var) - 1]; }
};

/// Pinned variable numbering: order variables first (order-major, then pairs
/// (x, y) with x < y ascending), then one variable per phi tuple index.
struct RealizerVarLayout {
  std::size_t elements = 0;
  unsigned orders = 0;
  bool free_phi = true;

  std::size_t pairs() const noexcept { return elements * (elements - (elements > 0)) / 2; }
  std::size_t pair_index(std::size_t x, std::size_t y) const noexcept {
    return x * (2 * elements - x - 1) / 2 + (y - x - 1);
  }
  /// Variable for "x before y in order i", x < y.
  int order_var(unsigned i, std::size_t x, std::size_t y) const noexcept {
    return static_cast<int>(1 + i * pairs() + pair_index(x, y));
  }
  /// Literal for "x before y in order i", any x != y.
  int before(unsigned i, std::size_t x, std::size_t y) const noexcept {
    return x < y ? order_var(i, x, y) : -order_var(i, y, x);
  }
  int phi_var(std::uint32_t tuple) const noexcept { return static_cast<int>(1 + orders * pairs() + tuple); }
  std::uint32_t variable_count() const noexcept {
    return static_cast<std::uint32_t>(orders * pairs() + (free_phi ? (std::size_t{1} << orders) : 0));
  }
};

struct EncodeGuards {
  unsigned max_orders = 8;
  std::size_t max_elements = 128;
  bool force = false;
};

/// CNF whose models are Boolean realizers of p with d orders: transitivity of
/// every order, a linking clause per ordered pair and tuple, and phi(1^d) = 1
/// in reflexive mode. With fixed_phi only the mismatching tuples are blocked.
/// Throws GuardExceeded and FixedPhiArityMismatch.
CnfInstance encode_bdim_sat(const Poset& p, unsigned d, const std::optional<TruthTable>& fixed_phi,
                            VerifyMode mode = VerifyMode::ReflexiveInclusive, const EncodeGuards& guards = {});

/// Index of the first clause the assignment falsifies. assignment[v] is the
/// value of variable v (index 0 unused); missing variables count as false.
std::optional<std::size_t> first_falsified_clause(const CnfInstance& cnf, const std::vector<bool>& assignment);

void write_dimacs(const CnfInstance& cnf, std::ostream& out);
/// Parses `p cnf V C` plus clauses; comment lines are skipped. The varmap is
/// left as all-auxiliary. Throws ParseError.
CnfInstance read_dimacs(std::istream& in);

/// Lines `var <k> order <i> before <x> <y>` / `var <k> phi <t>` / `var <k> aux`.
void write_varmap(const CnfInstance& cnf, std::ostream& out);
/// Fills cnf.varmap from a sidecar stream. Throws ParseError.
void read_varmap(std::istream& in, CnfInstance& cnf);

}  // namespace bdim
