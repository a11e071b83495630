#include "bdim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "bdim/error.hpp"

namespace bdim {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt power(std::uint64_t base, std::uint64_t exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

// Smallest d >= 0 with base^d >= target. base >= 2 unless target <= 1.
std::uint64_t smallest_exponent(std::uint64_t base, const BigInt& target) {
  std::uint64_t d = 0;
  BigInt acc = 1;
  while (acc < target) {
    acc *= base;
    ++d;
  }
  return d;
}

}  // namespace

DistinguishingSet singletons_of_grid(unsigned n, unsigned m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::BadParameter, "grid needs n >= 1 and m >= 1");
  DistinguishingSet d;
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned v = 1; v < m; ++v) d.members.push_back(static_cast<std::uint32_t>(v * stride));
    stride *= m;
  }
  std::sort(d.members.begin(), d.members.end());
  return d;
}

DistinguishingCheck is_distinguishing(const Poset& p, const DistinguishingSet& d) {
  for (auto z : d.members) {
    if (z >= p.size()) throw Error(ErrorCode::IndexOutOfRange, "member " + std::to_string(z));
  }
  // Elements with the same relation pattern towards D are exactly the undistinguished pairs.
  std::map<std::vector<Relation>, std::vector<std::size_t>> classes;
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::vector<Relation> pattern;
    pattern.reserve(d.size());
    for (auto z : d.members) pattern.push_back(relation(p, z, x));
    classes[std::move(pattern)].push_back(x);
  }
  DistinguishingCheck result;
  for (const auto& [pattern, members] : classes) {
    if (members.size() < 2) continue;
    const std::pair<std::size_t, std::size_t> candidate{members[0], members[1]};
    if (!result.failing_pair || candidate < *result.failing_pair) result.failing_pair = candidate;
  }
  result.distinguishing = !result.failing_pair;
  return result;
}

std::vector<Signature> signature_map(std::span<const LinearOrder> orders, const DistinguishingSet& d,
                                     unsigned threads) {
  const std::size_t n = orders.empty() ? 0 : orders.front().size();
  for (const auto& o : orders) {
    if (o.size() != n) throw Error(ErrorCode::SizeMismatch, "orders over different ground sets");
  }
  std::vector<bool> in_d(n, false);
  for (auto z : d.members) {
    if (z >= n) throw Error(ErrorCode::IndexOutOfRange, "member " + std::to_string(z));
    in_d[z] = true;
  }
  std::vector<Signature> sigs(n, Signature(orders.size(), 0));
  auto fill = [&](std::size_t i) {
    std::uint32_t seen = 0;
    for (auto x : orders[i].sequence()) {
      sigs[x][i] = seen;
      if (in_d[x]) ++seen;
    }
  };
  const unsigned workers = std::clamp<unsigned>(threads, 1, std::max<unsigned>(1, static_cast<unsigned>(orders.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < orders.size(); ++i) fill(i);
  } else {
    // Each order writes a distinct column, so workers never touch the same slot.
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < orders.size(); i += workers) fill(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return sigs;
}

std::optional<std::pair<std::size_t, std::size_t>> find_signature_collision(std::span<const Signature> signatures) {
  std::map<Signature, std::size_t> first_seen;
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t y = 0; y < signatures.size(); ++y) {
    auto [it, inserted] = first_seen.emplace(signatures[y], y);
    if (!inserted) {
      const std::pair<std::size_t, std::size_t> candidate{it->second, y};
      if (!best || candidate < *best) best = candidate;
    }
  }
  return best;
}

bool capacity_ok(std::uint64_t poset_size, std::uint64_t d_size, std::uint64_t d) {
  return power(d_size + 1, d) >= BigInt(poset_size);
}

BoundReport mn_lower_bound(unsigned n, unsigned m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::BadParameter, "mn_lower_bound needs n >= 1 and m >= 1");
  BoundReport report;
  report.formula = m == 2 ? "lat" : "mn";
  if (m == 1) return report;
  const std::uint64_t base = std::uint64_t{n} * (m - 1) + 1;
  report.raw_value = n * std::log(static_cast<double>(m)) / std::log(static_cast<double>(base));
  report.integer_bound = smallest_exponent(base, power(m, n));
  return report;
}

BoundReport lat_lower_bound(unsigned n) { return mn_lower_bound(n, 2); }

BoundReport distinguishing_lower_bound(const Poset& p, const DistinguishingSet& d) {
  if (!is_distinguishing(p, d).distinguishing) {
    throw Error(ErrorCode::NotDistinguishing, "the given set does not distinguish all pairs");
  }
  BoundReport report;
  report.formula = "distinguishing";
  if (p.size() <= 1) return report;
  const std::uint64_t base = d.size() + 1;
  report.raw_value = std::log(static_cast<double>(p.size())) / std::log(static_cast<double>(base));
  report.integer_bound = smallest_exponent(base, BigInt(p.size()));
  return report;
}

bool mn_bound_exceeds(unsigned n, std::uint64_t m, unsigned target) {
  return power(m, n) > power(std::uint64_t{n} * (m - 1) + 1, target - 1);
}

std::uint64_t min_multiplicity_for_target(unsigned n, unsigned target) {
  if (target < 2 || target > n || n > 16) {
    throw Error(ErrorCode::BadParameter, "need 2 <= target <= n <= 16");
  }
  // Below m = n the margin m^n / (n(m-1)+1)^(t-1) need not grow, so scan;
  // from m = n upward its log-derivative is positive and bisection is exact.
  for (std::uint64_t m = 2; m <= n; ++m) {
    if (mn_bound_exceeds(n, m, target)) return m;
  }
  std::uint64_t lo = n;  // fails
  std::uint64_t hi = 1;  // n^(n-1) always passes for target <= n
  for (unsigned i = 0; i + 1 < n; ++i) hi *= n;
  if (!mn_bound_exceeds(n, hi, target)) {
    throw Error(ErrorCode::BadParameter, "no multiplicity up to n^(n-1) reaches the target");
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (mn_bound_exceeds(n, mid, target)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace bdim
