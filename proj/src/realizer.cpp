#include "bdim/realizer.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

#include "bdim/error.hpp"

namespace bdim {

std::string QueryTuple::to_string() const {
  std::string s(arity, '0');
  for (unsigned i = 0; i < arity; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

BooleanRealizer::BooleanRealizer(std::size_t ground_size, std::vector<LinearOrder> orders, TruthTable phi)
    : ground_size_(ground_size), orders_(std::move(orders)), phi_(std::move(phi)) {
  for (const auto& o : orders_) {
    if (o.size() != ground_size_) {
      throw Error(ErrorCode::SizeMismatch, "order over " + std::to_string(o.size()) + " elements, realizer over " +
                                               std::to_string(ground_size_));
    }
  }
  if (phi_.arity() != orders_.size()) {
    throw Error(ErrorCode::BadArity, "phi arity " + std::to_string(phi_.arity()) + " but " +
                                         std::to_string(orders_.size()) + " orders");
  }
}

QueryTuple BooleanRealizer::query_tuple(std::size_t x, std::size_t y) const noexcept {
  QueryTuple t{0, dimension()};
  for (unsigned i = 0; i < orders_.size(); ++i) {
    if (orders_[i].precedes_or_equal(x, y)) t.bits |= 1U << i;
  }
  return t;
}

namespace {

struct PairScan {
  const Poset& poset;
  const TruthTable& phi;
  std::vector<std::uint32_t> ranks;  // element-major: ranks[x * d + i]
  unsigned d;
  std::size_t n;

  PairScan(const Poset& p, const BooleanRealizer& r)
      : poset(p), phi(r.phi()), ranks(r.ground_size() * r.dimension()), d(r.dimension()), n(r.ground_size()) {
    for (unsigned i = 0; i < d; ++i) {
      const auto rk = r.order(i).ranks();
      for (std::size_t x = 0; x < n; ++x) ranks[x * d + i] = rk[x];
    }
  }

  // First mismatch with x in [begin, end); gives up once x passes `stop`.
  std::optional<Counterexample> scan(std::size_t begin, std::size_t end, const std::atomic<std::size_t>& stop) const {
    for (std::size_t x = begin; x < end; ++x) {
      if (x > stop.load(std::memory_order_relaxed)) return std::nullopt;
      const auto* rx = ranks.data() + x * d;
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        const auto* ry = ranks.data() + y * d;
        std::uint32_t bits = 0;
        for (unsigned i = 0; i < d; ++i) bits |= static_cast<std::uint32_t>(rx[i] <= ry[i]) << i;
        const bool got = phi[bits];
        const bool expected = poset.leq(x, y);
        if (got != expected) return Counterexample{x, y, QueryTuple{bits, d}, expected, got};
      }
    }
    return std::nullopt;
  }
};

std::uint64_t scan_position(std::size_t n, std::size_t x, std::size_t y) {
  return static_cast<std::uint64_t>(x) * (n - 1) + (y > x ? y - 1 : y) + 1;
}

}  // namespace

VerifyOutcome verify(const Poset& p, const BooleanRealizer& r, const VerifyOptions& options) {
  if (r.ground_size() != p.size()) {
    throw Error(ErrorCode::SizeMismatch, "realizer over " + std::to_string(r.ground_size()) +
                                             " elements, poset has " + std::to_string(p.size()));
  }
  const auto n = p.size();
  VerifyOutcome outcome;
  if (options.mode == VerifyMode::ReflexiveInclusive && n > 0) {
    outcome.all_ones_checked = true;
    const auto ones = r.phi().all_ones_index();
    if (!r.phi()[ones]) {
      outcome.counterexample = Counterexample{0, 0, QueryTuple{ones, r.dimension()}, true, false};
      return outcome;
    }
  }
  if (n < 2) return outcome;

  const PairScan scan(p, r);
  const unsigned workers = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(n));
  std::atomic<std::size_t> stop{std::numeric_limits<std::size_t>::max()};
  std::optional<Counterexample> found;

  if (workers == 1) {
    found = scan.scan(0, n, stop);
  } else {
    std::vector<std::optional<Counterexample>> partial(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        partial[w] = scan.scan(begin, end, stop);
        if (partial[w]) {
          auto cur = stop.load();
          while (partial[w]->x < cur && !stop.compare_exchange_weak(cur, partial[w]->x)) {
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    // Ranges are ascending, so the first worker with a hit holds the global first.
    for (auto& c : partial) {
      if (c) {
        found = c;
        break;
      }
    }
  }

  if (found) {
    outcome.pairs_checked = scan_position(n, found->x, found->y);
    outcome.counterexample = found;
  } else {
    outcome.pairs_checked = static_cast<std::uint64_t>(n) * (n - 1);
  }
  return outcome;
}

BooleanRealizer from_extensions(const Poset& p, std::span<const LinearOrder> extensions) {
  for (std::size_t i = 0; i < extensions.size(); ++i) {
    if (!is_linear_extension(p, extensions[i])) {
      throw Error(ErrorCode::NotAnExtension, "order " + std::to_string(i + 1) + " is not a linear extension");
    }
  }
  const auto d = static_cast<unsigned>(extensions.size());
  TruthTable phi = d == 0 ? constant_function(0, true) : and_function(d);
  return BooleanRealizer(p.size(), {extensions.begin(), extensions.end()}, std::move(phi));
}

BooleanRealizer canonical_grid_realizer(unsigned n, unsigned m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::BadParameter, "canonical_grid_realizer needs n >= 1 and m >= 1");
  std::size_t size = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (size > Poset::kMaxElements / m) throw Error(ErrorCode::SizeCap, "grid exceeds the element cap");
    size *= m;
  }
  std::vector<std::vector<unsigned>> coords(size, std::vector<unsigned>(n));
  for (std::size_t x = 0; x < size; ++x) {
    std::size_t rest = x;
    for (unsigned i = 0; i < n; ++i) {
      coords[x][i] = static_cast<unsigned>(rest % m);
      rest /= m;
    }
  }
  std::vector<LinearOrder> orders;
  orders.reserve(n);
  std::vector<std::uint32_t> seq(size);
  for (unsigned i = 0; i < n; ++i) {
    std::iota(seq.begin(), seq.end(), 0U);
    std::sort(seq.begin(), seq.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (coords[a][i] != coords[b][i]) return coords[a][i] < coords[b][i];
      return coords[a] < coords[b];
    });
    orders.push_back(LinearOrder::from_sequence(seq));
  }
  return BooleanRealizer(size, std::move(orders), and_function(n));
}

BooleanRealizer compose_product(const Poset& p, const Poset& q, const BooleanRealizer& r_p,
                                const BooleanRealizer& r_q, const ComposeOptions& options) {
  if (r_p.ground_size() != p.size() || r_q.ground_size() != q.size()) {
    throw Error(ErrorCode::SizeMismatch, "input realizer does not match its poset");
  }
  const auto np = p.size();
  const auto nq = q.size();
  if (nq != 0 && np > Poset::kMaxElements / nq) {
    throw Error(ErrorCode::SizeCap, "product would exceed " + std::to_string(Poset::kMaxElements) + " elements");
  }
  if (options.verify_inputs) {
    if (!verify(p, r_p).ok() || !verify(q, r_q).ok()) {
      throw Error(ErrorCode::PreconditionFailed, "input realizer does not verify on its poset");
    }
  }
  if (np == 1) return r_q;
  if (nq == 1) return r_p;

  const unsigned s = r_p.dimension();
  const unsigned t = r_q.dimension();
  if (s + t > TruthTable::kMaxArity) {
    throw Error(ErrorCode::BadArity, "composed realizer would need " + std::to_string(s + t) + " orders");
  }
  if (!r_p.phi()[r_p.phi().all_ones_index()] || !r_q.phi()[r_q.phi().all_ones_index()]) {
    throw Error(ErrorCode::PreconditionFailed, "input phi must map the all-ones tuple to 1");
  }

  const ProductPairing pairing{np, nq};
  const auto size = np * nq;
  const LinearOrder ext_p = some_linear_extension(p);
  const LinearOrder ext_q = some_linear_extension(q);

  std::vector<LinearOrder> orders;
  orders.reserve(s + t);
  std::vector<std::uint32_t> rank(size);
  for (unsigned i = 0; i < s; ++i) {
    const auto& li = r_p.order(i);
    for (std::size_t a = 0; a < size; ++a) {
      rank[a] = static_cast<std::uint32_t>(li.rank(pairing.left(a)) * nq + ext_q.rank(pairing.right(a)));
    }
    orders.push_back(LinearOrder::from_ranks(rank));
  }
  for (unsigned j = 0; j < t; ++j) {
    const auto& kj = r_q.order(j);
    for (std::size_t a = 0; a < size; ++a) {
      rank[a] = static_cast<std::uint32_t>(kj.rank(pairing.right(a)) * np + ext_p.rank(pairing.left(a)));
    }
    orders.push_back(LinearOrder::from_ranks(rank));
  }

  TruthTable phi(s + t);
  const std::uint32_t low_mask = (1U << s) - 1;
  for (std::uint32_t j = 0; j < phi.size(); ++j) {
    phi.set(j, r_p.phi()[j & low_mask] && r_q.phi()[j >> s]);
  }
  return BooleanRealizer(size, std::move(orders), std::move(phi));
}

BooleanRealizer transport(const BooleanRealizer& r, const Isomorphism& iso) {
  const auto n = r.ground_size();
  if (iso.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "isomorphism over " + std::to_string(iso.size()) +
                                             " elements, realizer over " + std::to_string(n));
  }
  std::vector<LinearOrder> orders;
  orders.reserve(r.dimension());
  std::vector<std::uint32_t> rank(n);
  for (const auto& o : r.orders()) {
    for (std::size_t x = 0; x < n; ++x) rank[iso(x)] = o.rank(x);
    orders.push_back(LinearOrder::from_ranks(rank));
  }
  return BooleanRealizer(n, std::move(orders), r.phi());
}

BooleanRealizer upper_bound_realizer(unsigned n) {
  if (n > 13) throw Error(ErrorCode::SizeCap, "boolean lattice B_" + std::to_string(n) + " exceeds the element cap");
  if (n == 0) return BooleanRealizer(1, {}, constant_function(0, true));
  if (n < 6) return canonical_grid_realizer(n, 2);

  const unsigned blocks6 = n / 6;
  const unsigned remainder = n % 6;
  std::vector<unsigned> blocks(blocks6, 6);
  if (remainder) blocks.push_back(remainder);

  const Poset b6 = boolean_lattice(6);
  const BooleanRealizer r6 = b6_realizer();
  Poset acc_poset = b6;
  BooleanRealizer acc = r6;
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const bool full = blocks[b] == 6;
    const Poset factor = full ? b6 : boolean_lattice(blocks[b]);
    const BooleanRealizer factor_r = full ? r6 : canonical_grid_realizer(blocks[b], 2);
    acc = compose_product(acc_poset, factor, acc, factor_r);
    if (b + 1 < blocks.size()) acc_poset = product(acc_poset, factor).poset;
  }
  return transport(acc, block_decomposition_iso(n, blocks).inverse());
}

}  // namespace bdim
