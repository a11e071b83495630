#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bdim/cnf.hpp"
#include "bdim/poset.hpp"
#include "bdim/realizer.hpp"
#include "bdim/sat_solver.hpp"

namespace bdim {

struct ExactDimGuards {
  std::size_t max_elements = 10;
  std::size_t max_extensions = 2000;
  bool force = false;
};

struct ExactDimResult {
  /// Smallest d <= d_max, or empty if none was found.
  std::optional<unsigned> dimension;
  std::vector<LinearOrder> witness;
};

/// Smallest family of linear extensions whose intersection is p, by a
/// hitting-set search over all extensions. Throws GuardExceeded.
ExactDimResult exact_dim(const Poset& p, unsigned d_max, const ExactDimGuards& guards = {});

struct PhiConsistency {
  std::optional<TruthTable> table;
  /// On failure: two ordered pairs with equal tuples but different required
  /// answers. In reflexive mode a diagonal pair (x, x) stands for phi(1^d) = 1.
  std::pair<std::size_t, std::size_t> pair_a{0, 0};
  std::pair<std::size_t, std::size_t> pair_b{0, 0};

  bool consistent() const noexcept { return table.has_value(); }
};

/// For fixed orders a phi exists iff every tuple class of ordered pairs asks
/// for one answer. Unconstrained tuples map to 0.
PhiConsistency phi_consistent(const Poset& p, std::span<const LinearOrder> orders,
                              VerifyMode mode = VerifyMode::ReflexiveInclusive);

struct ExactBdimOptions {
  std::size_t max_elements = 5;
  unsigned max_d = 3;
  bool force = false;
  /// Only enumerate non-decreasing tuples of orders (phi is free, so order
  /// permutations are interchangeable). Off enumerates every ordered tuple.
  bool symmetry_reduction = true;
};

struct ExactBdimResult {
  std::optional<unsigned> dimension;
  std::optional<BooleanRealizer> witness;
};

/// Smallest d in 1..d_max admitting some realizer over arbitrary linear orders.
/// The witness always passes verify. Throws GuardExceeded.
ExactBdimResult exact_bdim(const Poset& p, unsigned d_max, VerifyMode mode = VerifyMode::ReflexiveInclusive,
                           const ExactBdimOptions& options = {});

/// Reads orders and phi out of a model. Throws DecodeInconsistent unless the
/// result is a genuine realizer of p under `mode`.
BooleanRealizer decode_model(const CnfInstance& cnf, const std::vector<bool>& assignment, const Poset& p, unsigned d,
                             const std::optional<TruthTable>& fixed_phi,
                             VerifyMode mode = VerifyMode::ReflexiveInclusive);

struct SearchEngine {
  enum class Kind { Internal, External, EmitOnly };
  Kind kind = Kind::Internal;
  /// External: command template with {cnf}. EmitOnly: output DIMACS path.
  std::string argument;
  std::uint64_t conflict_limit = 0;

  static SearchEngine internal(std::uint64_t conflict_limit = 0) { return {Kind::Internal, {}, conflict_limit}; }
  static SearchEngine external(std::string command) { return {Kind::External, std::move(command), 0}; }
  static SearchEngine emit_only(std::string path) { return {Kind::EmitOnly, std::move(path), 0}; }
};

struct SearchReport {
  /// Unknown also covers emit_only (nothing was solved).
  SatStatus status = SatStatus::Unknown;
  /// Present only for Sat, and only after decode + verify succeeded.
  std::optional<BooleanRealizer> realizer;
  /// False when an Unsat came from an external solver.
  bool verified = false;
  std::uint32_t variable_count = 0;
  std::size_t clause_count = 0;
  std::string dimacs_path;
  std::string varmap_path;
};

/// encode -> solve -> decode -> verify. emit_only writes the DIMACS file and a
/// `<path>.varmap` sidecar and stops.
SearchReport search_realizer(const Poset& p, unsigned d, const std::optional<TruthTable>& fixed_phi,
                             const SearchEngine& engine, VerifyMode mode = VerifyMode::ReflexiveInclusive,
                             const EncodeGuards& guards = {});

}  // namespace bdim
