#include "bdim/poset.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

#include "bdim/error.hpp"

namespace bdim {

namespace {

void require_cap(std::size_t n, const char* what) {
  if (n > Poset::kMaxElements) {
    throw Error(ErrorCode::SizeCap, std::string(what) + " would have " + std::to_string(n) +
                                        " elements (cap " + std::to_string(Poset::kMaxElements) + ")");
  }
}

// Checked n^k against the element cap without overflow.
std::size_t capped_power(std::size_t base, unsigned exp, const char* what) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > Poset::kMaxElements / base) require_cap(Poset::kMaxElements + 1, what);
    r *= base;
  }
  require_cap(r, what);
  return r;
}

std::vector<std::string> numeric_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

Poset::Poset(BitMatrix leq, std::vector<std::string> labels) : leq_(std::move(leq)), labels_(std::move(labels)) {
  if (labels_.empty()) labels_ = numeric_labels(leq_.size());
  if (labels_.size() != leq_.size()) {
    throw Error(ErrorCode::SizeMismatch, "label count differs from element count");
  }
}

std::optional<std::string> Poset::check_invariants() const {
  const auto n = size();
  if (n > kMaxElements) return "element count exceeds cap";
  for (std::size_t x = 0; x < n; ++x) {
    if (!leq(x, x)) return "not reflexive at " + std::to_string(x);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (leq(x, y) && leq(y, x)) {
        return "not antisymmetric at (" + std::to_string(x) + "," + std::to_string(y) + ")";
      }
    }
  }
  // Transitive iff up(y) is contained in up(x) whenever x <= y.
  for (std::size_t x = 0; x < n; ++x) {
    const auto ux = up_set(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (!leq(x, y)) continue;
      const auto uy = up_set(y);
      for (std::size_t w = 0; w < ux.size(); ++w) {
        if (uy[w] & ~ux[w]) return "not transitive through (" + std::to_string(x) + "," + std::to_string(y) + ")";
      }
    }
  }
  return std::nullopt;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Poset::cover_pairs() const {
  const auto n = size();
  const auto words = leq_.words_per_row();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers;
  std::vector<std::uint64_t> above(words);
  for (std::size_t x = 0; x < n; ++x) {
    // Elements strictly above some strict successor of x are not covers of x.
    std::fill(above.begin(), above.end(), 0);
    for (std::size_t z = 0; z < n; ++z) {
      if (!less(x, z)) continue;
      const auto uz = up_set(z);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t strict = uz[w];
        if (w == z / 64) strict &= ~(std::uint64_t{1} << (z % 64));
        above[w] |= strict;
      }
    }
    for (std::size_t z = 0; z < n; ++z) {
      if (less(x, z) && !((above[z / 64] >> (z % 64)) & 1U)) {
        covers.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(z));
      }
    }
  }
  return covers;
}

Isomorphism Isomorphism::inverse() const {
  Isomorphism inv;
  inv.forward.assign(forward.size(), 0);
  for (std::size_t x = 0; x < forward.size(); ++x) inv.forward[forward[x]] = static_cast<std::uint32_t>(x);
  return inv;
}

Isomorphism Isomorphism::identity(std::size_t n) {
  Isomorphism iso;
  iso.forward.resize(n);
  for (std::size_t i = 0; i < n; ++i) iso.forward[i] = static_cast<std::uint32_t>(i);
  return iso;
}

bool is_isomorphism(const Poset& source, const Poset& target, const Isomorphism& iso) {
  const auto n = source.size();
  if (target.size() != n || iso.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto f : iso.forward) {
    if (f >= n || hit[f]) return false;
    hit[f] = true;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (source.leq(x, y) != target.leq(iso(x), iso(y))) return false;
    }
  }
  return true;
}

Poset from_relation_pairs(std::size_t n, std::vector<std::string> labels,
                          std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs, PairMode /*mode*/) {
  require_cap(n, "poset");
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "expected " + std::to_string(n) + " labels");
  }
  std::vector<std::vector<std::uint32_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "pair (" + std::to_string(a) + "," + std::to_string(b) + ") with n=" + std::to_string(n));
    }
    if (a == b) continue;
    succ[a].push_back(b);
    ++indegree[b];
  }

  std::vector<std::uint32_t> topo;
  topo.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (indegree[x] == 0) topo.push_back(static_cast<std::uint32_t>(x));
  }
  for (std::size_t head = 0; head < topo.size(); ++head) {
    for (auto s : succ[topo[head]]) {
      if (--indegree[s] == 0) topo.push_back(s);
    }
  }
  if (topo.size() != n) {
    throw Error(ErrorCode::CycleDetected, "relation pairs contain a cycle; not a partial order");
  }

  BitMatrix leq(n);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto x = *it;
    leq.set(x, x);
    for (auto s : succ[x]) leq.or_row(x, s);
  }
  return Poset(std::move(leq), std::move(labels));
}

std::string subset_label(std::uint64_t mask, unsigned n) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) {
      if (!first) s += ',';
      s += std::to_string(i + 1);
      first = false;
    }
  }
  return s + "}";
}

Poset boolean_lattice(unsigned n) {
  if (n > 13) require_cap(Poset::kMaxElements + 1, "boolean lattice");
  const std::size_t size = std::size_t{1} << n;
  BitMatrix leq(size);
  std::vector<std::string> labels(size);
  for (std::size_t x = 0; x < size; ++x) {
    labels[x] = subset_label(x, n);
    for (std::size_t y = 0; y < size; ++y) {
      if ((x & ~y) == 0) leq.set(x, y);
    }
  }
  return Poset(std::move(leq), std::move(labels));
}

Poset multiset_grid(unsigned n, unsigned m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::BadParameter, "multiset_grid needs n >= 1 and m >= 1");
  const auto size = capped_power(m, n, "multiset grid");
  std::vector<std::vector<unsigned>> coords(size, std::vector<unsigned>(n));
  std::vector<std::string> labels(size);
  for (std::size_t x = 0; x < size; ++x) {
    std::size_t rest = x;
    std::string label = "(";
    for (unsigned i = 0; i < n; ++i) {
      coords[x][i] = static_cast<unsigned>(rest % m);
      rest /= m;
      if (i) label += ',';
      label += std::to_string(coords[x][i]);
    }
    labels[x] = label + ")";
  }
  BitMatrix leq(size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      bool below = true;
      for (unsigned i = 0; i < n && below; ++i) below = coords[x][i] <= coords[y][i];
      if (below) leq.set(x, y);
    }
  }
  return Poset(std::move(leq), std::move(labels));
}

Poset standard_example(unsigned n) {
  if (n < 2) throw Error(ErrorCode::BadParameter, "standard example needs n >= 2");
  require_cap(2 * std::size_t{n}, "standard example");
  const std::size_t size = 2 * std::size_t{n};
  BitMatrix leq(size);
  std::vector<std::string> labels(size);
  for (unsigned i = 0; i < n; ++i) {
    labels[i] = "{" + std::to_string(i + 1) + "}";
    labels[n + i] = "[" + std::to_string(n) + "]\\{" + std::to_string(i + 1) + "}";
  }
  for (std::size_t x = 0; x < size; ++x) leq.set(x, x);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      if (i != j) leq.set(i, n + j);
    }
  }
  return Poset(std::move(leq), std::move(labels));
}

Poset chain(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::BadParameter, "chain needs k >= 1");
  require_cap(k, "chain");
  BitMatrix leq(k);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = x; y < k; ++y) leq.set(x, y);
  }
  return Poset(std::move(leq), {});
}

Poset antichain(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::BadParameter, "antichain needs k >= 1");
  require_cap(k, "antichain");
  BitMatrix leq(k);
  for (std::size_t x = 0; x < k; ++x) leq.set(x, x);
  return Poset(std::move(leq), {});
}

ProductPoset product(const Poset& p, const Poset& q) {
  const auto np = p.size();
  const auto nq = q.size();
  if (nq != 0 && np > Poset::kMaxElements / nq) require_cap(Poset::kMaxElements + 1, "product");
  const ProductPairing pairing{np, nq};
  const auto size = np * nq;
  BitMatrix leq(size);
  std::vector<std::string> labels(size);
  for (std::size_t a = 0; a < size; ++a) {
    const auto pa = pairing.left(a);
    const auto qa = pairing.right(a);
    labels[a] = "(" + p.label(pa) + "," + q.label(qa) + ")";
    for (std::size_t b = 0; b < size; ++b) {
      if (p.leq(pa, pairing.left(b)) && q.leq(qa, pairing.right(b))) leq.set(a, b);
    }
  }
  return {Poset(std::move(leq), std::move(labels)), pairing};
}

Poset product_of(std::span<const Poset> factors) {
  if (factors.empty()) return chain(1);
  Poset acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = product(acc, factors[i]).poset;
  return acc;
}

Poset subposet(const Poset& p, std::span<const std::uint32_t> keep) {
  std::vector<std::uint32_t> idx(keep.begin(), keep.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (auto x : idx) {
    if (x >= p.size()) throw Error(ErrorCode::IndexOutOfRange, "subposet index " + std::to_string(x));
  }
  BitMatrix leq(idx.size());
  std::vector<std::string> labels(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    labels[a] = p.label(idx[a]);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (p.leq(idx[a], idx[b])) leq.set(a, b);
    }
  }
  return Poset(std::move(leq), std::move(labels));
}

Relation relation(const Poset& p, std::size_t x, std::size_t y) {
  if (x == y) return Relation::Equal;
  if (p.leq(x, y)) return Relation::Less;
  if (p.leq(y, x)) return Relation::Greater;
  return Relation::Incomparable;
}

LinearOrder some_linear_extension(const Poset& p) {
  const auto n = p.size();
  std::vector<std::size_t> below(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (p.less(x, y)) ++below[y];
    }
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> minimal;
  for (std::size_t x = 0; x < n; ++x) {
    if (below[x] == 0) minimal.push(static_cast<std::uint32_t>(x));
  }
  std::vector<std::uint32_t> seq;
  seq.reserve(n);
  while (!minimal.empty()) {
    const auto x = minimal.top();
    minimal.pop();
    seq.push_back(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (p.less(x, y) && --below[y] == 0) minimal.push(static_cast<std::uint32_t>(y));
    }
  }
  return LinearOrder::from_sequence(seq);
}

ExtensionList linear_extensions(const Poset& p, std::size_t limit) {
  const auto n = p.size();
  ExtensionList result;
  std::vector<std::size_t> below(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (p.less(x, y)) ++below[y];
    }
  }
  std::vector<bool> placed(n, false);
  std::vector<std::uint32_t> seq;
  seq.reserve(n);

  std::function<bool()> extend = [&]() -> bool {
    if (seq.size() == n) {
      if (result.orders.size() == limit) {
        result.limit_exceeded = true;
        return false;
      }
      result.orders.push_back(LinearOrder::from_sequence(seq));
      return true;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (placed[x] || below[x] != 0) continue;
      placed[x] = true;
      seq.push_back(static_cast<std::uint32_t>(x));
      for (std::size_t y = 0; y < n; ++y) {
        if (p.less(x, y)) --below[y];
      }
      const bool keep_going = extend();
      for (std::size_t y = 0; y < n; ++y) {
        if (p.less(x, y)) ++below[y];
      }
      seq.pop_back();
      placed[x] = false;
      if (!keep_going) return false;
    }
    return true;
  };
  extend();
  return result;
}

bool is_linear_extension(const Poset& p, const LinearOrder& order) {
  if (order.size() != p.size()) {
    throw Error(ErrorCode::SizeMismatch, "order has " + std::to_string(order.size()) + " elements, poset has " +
                                             std::to_string(p.size()));
  }
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (p.less(x, y) && order.rank(x) >= order.rank(y)) return false;
    }
  }
  return true;
}

Isomorphism block_decomposition_iso(unsigned n, std::span<const unsigned> block_sizes) {
  unsigned total = 0;
  for (auto b : block_sizes) {
    if (b == 0) throw Error(ErrorCode::BadPartition, "empty block");
    total += b;
  }
  if (total != n) {
    throw Error(ErrorCode::BadPartition,
                "block sizes sum to " + std::to_string(total) + ", expected " + std::to_string(n));
  }
  if (n > 13) require_cap(Poset::kMaxElements + 1, "boolean lattice");
  const std::size_t size = std::size_t{1} << n;
  Isomorphism iso;
  iso.forward.resize(size);
  for (std::size_t subset = 0; subset < size; ++subset) {
    std::size_t index = 0;
    unsigned offset = 0;
    for (auto b : block_sizes) {
      const std::size_t part = (subset >> offset) & ((std::size_t{1} << b) - 1);
      index = (index << b) | part;
      offset += b;
    }
    iso.forward[subset] = static_cast<std::uint32_t>(index);
  }
  return iso;
}

}  // namespace bdim
