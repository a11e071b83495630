#include "bdim/linear_order.hpp"

#include <string>

#include "bdim/error.hpp"

namespace bdim {

LinearOrder LinearOrder::from_sequence(std::span<const std::uint32_t> least_to_greatest) {
  const auto n = least_to_greatest.size();
  std::vector<std::uint32_t> rank(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto e = least_to_greatest[pos];
    if (e >= n || seen[e]) {
      throw Error(ErrorCode::BadParameter,
                  "order sequence is not a permutation (element " + std::to_string(e) + ")");
    }
    seen[e] = true;
    rank[e] = static_cast<std::uint32_t>(pos);
  }
  return LinearOrder(std::move(rank));
}

LinearOrder LinearOrder::from_ranks(std::vector<std::uint32_t> rank) {
  const auto n = rank.size();
  std::vector<bool> seen(n, false);
  for (auto r : rank) {
    if (r >= n || seen[r]) {
      throw Error(ErrorCode::BadParameter, "rank vector is not a bijection onto 0..N-1");
    }
    seen[r] = true;
  }
  return LinearOrder(std::move(rank));
}

LinearOrder LinearOrder::identity(std::size_t n) {
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[i] = static_cast<std::uint32_t>(i);
  return LinearOrder(std::move(rank));
}

std::vector<std::uint32_t> LinearOrder::sequence() const {
  std::vector<std::uint32_t> seq(rank_.size());
  for (std::size_t x = 0; x < rank_.size(); ++x) seq[rank_[x]] = static_cast<std::uint32_t>(x);
  return seq;
}

}  // namespace bdim
