#include "bdim/truth_table.hpp"

#include <bit>

#include "bdim/error.hpp"

namespace bdim {

namespace {

void require_arity(unsigned d) {
  if (d < 1 || d > TruthTable::kMaxArity) {
    throw Error(ErrorCode::BadArity, "arity " + std::to_string(d) + " outside 1..16");
  }
}

}  // namespace

TruthTable::TruthTable(unsigned arity) : arity_(arity) {
  if (arity > kMaxArity) throw Error(ErrorCode::BadArity, "arity " + std::to_string(arity) + " exceeds 16");
  words_.assign((size() + 63) / 64, 0);
}

void TruthTable::set(std::uint32_t index, bool value) noexcept {
  auto& w = words_[index / 64];
  const std::uint64_t mask = std::uint64_t{1} << (index % 64);
  w = value ? (w | mask) : (w & ~mask);
}

std::size_t TruthTable::count_ones() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::string TruthTable::to_bit_string() const {
  std::string s(size(), '0');
  for (std::uint32_t j = 0; j < size(); ++j) {
    if ((*this)[j]) s[j] = '1';
  }
  return s;
}

TruthTable TruthTable::from_bit_string(std::string_view bits) {
  const auto n = bits.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::ParseError, "truth table length " + std::to_string(n) + " is not a power of two");
  }
  const auto arity = static_cast<unsigned>(std::countr_zero(n));
  if (arity > kMaxArity) throw Error(ErrorCode::ParseError, "truth table arity exceeds 16");
  TruthTable t(arity);
  for (std::uint32_t j = 0; j < n; ++j) {
    if (bits[j] == '1') {
      t.set(j);
    } else if (bits[j] != '0') {
      throw Error(ErrorCode::ParseError, "truth table contains a character other than 0/1");
    }
  }
  return t;
}

TruthTable and_function(unsigned d) {
  require_arity(d);
  TruthTable t(d);
  t.set(t.all_ones_index());
  return t;
}

TruthTable threshold_at_most_one_zero(unsigned d) {
  require_arity(d);
  TruthTable t(d);
  for (std::uint32_t j = 0; j < t.size(); ++j) {
    if (static_cast<unsigned>(std::popcount(j)) + 1 >= d) t.set(j);
  }
  return t;
}

TruthTable constant_function(unsigned d, bool value) {
  TruthTable t(d);
  if (value) {
    for (std::uint32_t j = 0; j < t.size(); ++j) t.set(j);
  }
  return t;
}

}  // namespace bdim
