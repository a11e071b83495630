#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bdim/linear_order.hpp"
#include "bdim/poset.hpp"
#include "bdim/truth_table.hpp"

namespace bdim {

/// Comparison bits e_i = [x <=_{L_i} y], packed with coordinate 1 as bit 0.
struct QueryTuple {
  std::uint32_t bits = 0;
  unsigned arity = 0;

  bool operator[](unsigned i) const noexcept { return (bits >> i) & 1U; }
  /// e_1 e_2 ... e_d, coordinate 1 first.
  std::string to_string() const;
  bool operator==(const QueryTuple&) const = default;
};

/// d linear orders on a common ground set plus a d-ary truth table. The
/// realizer claims x <= y iff phi(query_tuple(x, y)).
class BooleanRealizer {
 public:
  BooleanRealizer() = default;
  /// Throws SizeMismatch if an order is not over `ground_size` elements and
  /// BadArity if phi's arity differs from the number of orders.
  BooleanRealizer(std::size_t ground_size, std::vector<LinearOrder> orders, TruthTable phi);

  std::size_t ground_size() const noexcept { return ground_size_; }
  unsigned dimension() const noexcept { return static_cast<unsigned>(orders_.size()); }
  const std::vector<LinearOrder>& orders() const noexcept { return orders_; }
  const LinearOrder& order(std::size_t i) const { return orders_[i]; }
  const TruthTable& phi() const noexcept { return phi_; }

  QueryTuple query_tuple(std::size_t x, std::size_t y) const noexcept;
  bool evaluate(std::size_t x, std::size_t y) const noexcept { return phi_[query_tuple(x, y).bits]; }

  bool operator==(const BooleanRealizer&) const = default;

 private:
  std::size_t ground_size_ = 0;
  std::vector<LinearOrder> orders_;
  TruthTable phi_;
};

inline QueryTuple query_tuple(const BooleanRealizer& r, std::size_t x, std::size_t y) { return r.query_tuple(x, y); }
inline bool evaluate(const BooleanRealizer& r, std::size_t x, std::size_t y) { return r.evaluate(x, y); }

enum class VerifyMode {
  /// phi(1^d) must be 1 (reflexivity) and every pair x != y must match.
  ReflexiveInclusive,
  /// Only pairs x != y are checked.
  DistinctOnly,
};

struct VerifyOptions {
  VerifyMode mode = VerifyMode::ReflexiveInclusive;
  unsigned threads = 1;
};

struct Counterexample {
  std::size_t x = 0;
  std::size_t y = 0;
  QueryTuple tuple;
  bool expected = false;
  bool got = false;
  bool operator==(const Counterexample&) const = default;
};

struct VerifyOutcome {
  std::optional<Counterexample> counterexample;
  /// Ordered pairs x != y examined, in scan order, up to and including the counterexample.
  std::uint64_t pairs_checked = 0;
  /// Whether the phi(1^d) = 1 reflexivity check ran (and passed, if ok()).
  bool all_ones_checked = false;

  bool ok() const noexcept { return !counterexample.has_value(); }
};

/// Exhaustive pair scan. The reported counterexample is the first in
/// ascending (x, then y) order, whatever the thread count. Throws SizeMismatch.
VerifyOutcome verify(const Poset& p, const BooleanRealizer& r, const VerifyOptions& options = {});

/// AND of the given orders. Throws NotAnExtension if one is not a linear extension of p.
BooleanRealizer from_extensions(const Poset& p, std::span<const LinearOrder> extensions);

/// n orders on multiset_grid(n, m): order i sorts by coordinate i, ties by
/// the full vector lexicographically; phi = AND.
BooleanRealizer canonical_grid_realizer(unsigned n, unsigned m);

/// The five orders of the B_6 table (least to greatest) in subset-index encoding.
const std::array<std::array<std::uint8_t, 64>, 5>& b6_table_orders();
/// FNV-1a 64 over the 320 transcribed indices, order by order.
std::uint64_t b6_table_checksum();
/// Five-order realizer of B_6 with phi = "at most one zero".
BooleanRealizer b6_realizer();

struct ComposeOptions {
  /// Re-verify both inputs before composing (costly on large factors).
  bool verify_inputs = false;
};

/// Realizer of product(p, q) with dimension r_p.d + r_q.d. Orders 1..s follow
/// r_p on the left coordinate with ties broken by a linear extension of q;
/// orders s+1..s+t are symmetric; phi = phi_p(first s bits) AND phi_q(rest).
/// Throws SizeMismatch, SizeCap, BadArity (combined arity > 16) and
/// PreconditionFailed (phi(1^d) = 0 on an input, or an input fails to verify
/// when verify_inputs is set).
BooleanRealizer compose_product(const Poset& p, const Poset& q, const BooleanRealizer& r_p,
                                const BooleanRealizer& r_q, const ComposeOptions& options = {});

/// Relabels every order through iso: element iso(x) takes the rank of x.
BooleanRealizer transport(const BooleanRealizer& r, const Isomorphism& iso);

/// ceil(5n/6) in integers.
constexpr unsigned five_sixths_ceiling(unsigned n) { return (5 * n + 5) / 6; }

/// Realizer of boolean_lattice(n) with five_sixths_ceiling(n) orders for
/// n >= 6 (B_6 blocks composed with a canonical remainder) and n orders below.
BooleanRealizer upper_bound_realizer(unsigned n);

}  // namespace bdim
