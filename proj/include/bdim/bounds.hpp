#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bdim/linear_order.hpp"
#include "bdim/poset.hpp"

namespace bdim {

/// Element indices of a poset used as reference points.
struct DistinguishingSet {
  std::vector<std::uint32_t> members;
  std::size_t size() const noexcept { return members.size(); }
};

/// s_i(A) = number of members of D strictly below A in order i.
using Signature = std::vector<std::uint32_t>;

struct BoundReport {
  /// Natural-log ratio; the ratios are base-invariant.
  double raw_value = 0.0;
  /// Smallest integer d admitted by the counting inequality, decided exactly.
  std::uint64_t integer_bound = 0;
  std::string formula;
};

struct DistinguishingCheck {
  bool distinguishing = true;
  /// Smallest (x, y), x < y, with identical relation patterns to every member of D.
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
};

/// Grid elements with exactly one nonzero coordinate, ascending index; |D| = n(m-1).
DistinguishingSet singletons_of_grid(unsigned n, unsigned m);

DistinguishingCheck is_distinguishing(const Poset& p, const DistinguishingSet& d);

/// Signature of every element. Throws SizeMismatch / IndexOutOfRange.
std::vector<Signature> signature_map(std::span<const LinearOrder> orders, const DistinguishingSet& d,
                                     unsigned threads = 1);

/// First (x, y), x < y, with equal signatures, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_signature_collision(std::span<const Signature> signatures);

/// (|D| + 1)^d >= poset_size, exactly.
bool capacity_ok(std::uint64_t poset_size, std::uint64_t d_size, std::uint64_t d);

/// Counting bound for M(n, m): n log m / log(n(m-1) + 1). m = 1 gives 0.
BoundReport mn_lower_bound(unsigned n, unsigned m);
/// mn_lower_bound(n, 2): n / log2(n + 1).
BoundReport lat_lower_bound(unsigned n);
/// log|P| / log(|D| + 1); throws NotDistinguishing if D is not distinguishing.
BoundReport distinguishing_lower_bound(const Poset& p, const DistinguishingSet& d);

/// Smallest m >= 2 with m^n > (n(m-1) + 1)^(target-1), i.e. the M(n, m)
/// bound certifies bdim >= target. Requires 2 <= target <= n <= 16.
std::uint64_t min_multiplicity_for_target(unsigned n, unsigned target);

/// The exact comparison m^n > (n(m-1) + 1)^(target-1).
bool mn_bound_exceeds(unsigned n, std::uint64_t m, unsigned target);

}  // namespace bdim
