#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bdim {

/// A total order on {0..N-1}, stored as element -> position.
class LinearOrder {
 public:
  LinearOrder() = default;

  /// Throws BadParameter unless `least_to_greatest` is a permutation of 0..N-1.
  static LinearOrder from_sequence(std::span<const std::uint32_t> least_to_greatest);
  /// Throws BadParameter unless `rank` is a bijection onto 0..N-1.
  static LinearOrder from_ranks(std::vector<std::uint32_t> rank);
  static LinearOrder identity(std::size_t n);

  std::size_t size() const noexcept { return rank_.size(); }
  std::uint32_t rank(std::size_t x) const noexcept { return rank_[x]; }
  std::span<const std::uint32_t> ranks() const noexcept { return rank_; }

  /// Non-strict comparison x <=_L y.
  bool precedes_or_equal(std::size_t x, std::size_t y) const noexcept { return rank_[x] <= rank_[y]; }

  /// Elements listed least to greatest.
  std::vector<std::uint32_t> sequence() const;

  bool operator==(const LinearOrder&) const = default;

 private:
  explicit LinearOrder(std::vector<std::uint32_t> rank) : rank_(std::move(rank)) {}
  std::vector<std::uint32_t> rank_;
};

}  // namespace bdim
