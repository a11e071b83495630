#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bdim {

/// Dense square bit matrix, row-major, each row padded to whole 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t r, std::size_t c) const noexcept {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    auto& w = bits_[r * words_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const std::uint64_t> row(std::size_t r) const noexcept {
    return {bits_.data() + r * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t r) noexcept { return {bits_.data() + r * words_, words_}; }

  /// row(dst) |= row(src)
  void or_row(std::size_t dst, std::size_t src) noexcept {
    auto* d = bits_.data() + dst * words_;
    const auto* s = bits_.data() + src * words_;
    for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
  }

  std::size_t row_count(std::size_t r) const noexcept {
    std::size_t c = 0;
    for (auto w : row(r)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace bdim
