#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bdim/bit_matrix.hpp"
#include "bdim/linear_order.hpp"

namespace bdim {

/// Finite poset on {0..N-1} with a dense leq matrix: leq(x, y) iff x <= y.
///
/// Posets are immutable once built. The constructor trusts its input; every
/// public constructor function below produces a valid partial order, and
/// check_invariants() is available for anything assembled by hand.
class Poset {
 public:
  static constexpr std::size_t kMaxElements = 8192;

  Poset() = default;
  Poset(BitMatrix leq, std::vector<std::string> labels);

  std::size_t size() const noexcept { return leq_.size(); }
  bool leq(std::size_t x, std::size_t y) const noexcept { return leq_.test(x, y); }
  bool less(std::size_t x, std::size_t y) const noexcept { return x != y && leq_.test(x, y); }
  bool comparable(std::size_t x, std::size_t y) const noexcept { return leq(x, y) || leq(y, x); }

  const std::string& label(std::size_t x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const BitMatrix& matrix() const noexcept { return leq_; }

  /// Up-set of x (including x) as a bit row.
  std::span<const std::uint64_t> up_set(std::size_t x) const noexcept { return leq_.row(x); }

  /// First violated invariant (reflexivity, antisymmetry, transitivity), if any.
  std::optional<std::string> check_invariants() const;

  /// Cover pairs (x, y): x < y with nothing strictly between, ascending.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cover_pairs() const;

  /// Same relation matrix, labels ignored.
  bool same_order(const Poset& other) const noexcept { return leq_ == other.leq_; }
  bool operator==(const Poset&) const = default;

 private:
  BitMatrix leq_;
  std::vector<std::string> labels_;
};

enum class Relation { Equal, Less, Greater, Incomparable };

/// How the input pairs of from_relation_pairs are interpreted. Both modes
/// take the reflexive-transitive closure, so they produce the same poset.
enum class PairMode { Covers, Relation };

/// Bijection between ground sets; forward[x] is the image of x.
struct Isomorphism {
  std::vector<std::uint32_t> forward;

  std::size_t size() const noexcept { return forward.size(); }
  std::uint32_t operator()(std::size_t x) const noexcept { return forward[x]; }
  Isomorphism inverse() const;
  static Isomorphism identity(std::size_t n);
};

/// True iff iso is a bijection source -> target with x <= y <=> iso(x) <= iso(y).
bool is_isomorphism(const Poset& source, const Poset& target, const Isomorphism& iso);

/// Index pairing of a binary product: index = p * right_size + q.
struct ProductPairing {
  std::size_t left_size = 0;
  std::size_t right_size = 0;

  std::size_t index(std::size_t p, std::size_t q) const noexcept { return p * right_size + q; }
  std::size_t left(std::size_t i) const noexcept { return i / right_size; }
  std::size_t right(std::size_t i) const noexcept { return i % right_size; }
};

struct ProductPoset {
  Poset poset;
  ProductPairing pairing;
};

Poset from_relation_pairs(std::size_t n, std::vector<std::string> labels,
                          std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs,
                          PairMode mode = PairMode::Relation);

/// Subsets of [n]; subset S has index sum_{i in S} 2^(i-1).
Poset boolean_lattice(unsigned n);
/// Vectors in {0..m-1}^n, index sum v_i * m^(i-1), coordinatewise order.
Poset multiset_grid(unsigned n, unsigned m);
/// Singletons 0..n-1 then co-singletons n..2n-1; {i} < [n]\{j} iff i != j.
Poset standard_example(unsigned n);
Poset chain(std::size_t k);
Poset antichain(std::size_t k);

ProductPoset product(const Poset& p, const Poset& q);
/// Left fold ((P1 x P2) x P3) x ...; an empty list gives the one-element poset.
Poset product_of(std::span<const Poset> factors);
/// Induced subposet, reindexed in ascending original order. `keep` may be unsorted.
Poset subposet(const Poset& p, std::span<const std::uint32_t> keep);

Relation relation(const Poset& p, std::size_t x, std::size_t y);

/// Repeatedly removes the smallest-index minimal element.
LinearOrder some_linear_extension(const Poset& p);

struct ExtensionList {
  std::vector<LinearOrder> orders;
  bool limit_exceeded = false;
};

/// All linear extensions in lexicographic order of their sequences, stopping
/// after `limit` (limit_exceeded is set if more exist).
ExtensionList linear_extensions(const Poset& p, std::size_t limit);

bool is_linear_extension(const Poset& p, const LinearOrder& order);

/// Maps the subset index of B_n to the index of B_{b1} x ... x B_{bt}
/// (left-fold product, block j covering the next b_j coordinates).
Isomorphism block_decomposition_iso(unsigned n, std::span<const unsigned> block_sizes);

std::string subset_label(std::uint64_t mask, unsigned n);

}  // namespace bdim
