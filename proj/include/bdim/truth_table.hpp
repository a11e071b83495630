#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bdim {

/// Boolean function on d-bit tuples. Tuple (e_1, ..., e_d) has index
/// sum e_i * 2^(i-1), i.e. coordinate 1 is the least significant bit.
class TruthTable {
 public:
  static constexpr unsigned kMaxArity = 16;

  TruthTable() : TruthTable(0) {}
  /// All-zero table. Throws BadArity above kMaxArity.
  explicit TruthTable(unsigned arity);

  unsigned arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return std::size_t{1} << arity_; }
  std::uint32_t all_ones_index() const noexcept { return static_cast<std::uint32_t>(size() - 1); }

  bool operator[](std::uint32_t index) const noexcept { return (words_[index / 64] >> (index % 64)) & 1U; }
  void set(std::uint32_t index, bool value = true) noexcept;

  std::size_t count_ones() const noexcept;

  /// '0'/'1' per index, position j = value at tuple index j.
  std::string to_bit_string() const;
  /// Inverse of to_bit_string; the length must be a power of two. Throws ParseError.
  static TruthTable from_bit_string(std::string_view bits);

  bool operator==(const TruthTable&) const = default;

 private:
  unsigned arity_;
  std::vector<std::uint64_t> words_;
};

/// 1 only on the all-ones tuple. Arity 1..16.
TruthTable and_function(unsigned d);
/// 1 iff at most one coordinate is 0 (popcount >= d-1). Arity 1..16.
TruthTable threshold_at_most_one_zero(unsigned d);
/// Constant function of the given arity (0 allowed).
TruthTable constant_function(unsigned d, bool value);

}  // namespace bdim
