// Acceptance checks, one line per criterion. Time limits and exactness
// requirements are pinned below; a criterion fails rather than bending.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "bdim/bounds.hpp"
#include "bdim/cli.hpp"
#include "bdim/io.hpp"
#include "bdim/search.hpp"
#include "oracles.hpp"

using namespace bdim;

namespace {

constexpr double kTable6LimitSeconds = 1.0;
constexpr double kUpper12LimitSeconds = 60.0;
constexpr double kStandard4LimitSeconds = 300.0;
constexpr int kComposeTrials = 50;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::ostringstream line;
  line << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << " (" << std::fixed << std::setprecision(2)
       << seconds_since(start) << " s)";
  if (!o.detail.empty()) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
  failures += !o.pass;
}

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

Outcome ac1() {
  Outcome o;
  const auto p = boolean_lattice(6);
  const auto r = b6_realizer();
  require(o, b6_table_checksum() == 0x092f057fa9e2d6b7ULL, "table checksum mismatch");
  const auto start = Clock::now();
  const auto res = verify(p, r, {VerifyMode::ReflexiveInclusive, 1});
  const double t = seconds_since(start);
  require(o, res.ok(), "verify found a counterexample");
  require(o, res.pairs_checked == 64 * 63, "pair count " + std::to_string(res.pairs_checked));
  require(o, res.all_ones_checked, "all-ones check skipped");
  require(o, t < kTable6LimitSeconds, "too slow");
  require(o, oracle::realizes(64, r, [](std::size_t a, std::size_t b) { return oracle::subset_leq(a, b); }),
          "naive oracle disagrees");
  if (o.pass) o.detail = "4032 ordered pairs + all-ones, verify " + std::to_string(t * 1000).substr(0, 5) + " ms";
  return o;
}

Outcome ac2() {
  Outcome o;
  for (unsigned n = 6; n <= 12; ++n) {
    const auto start = Clock::now();
    const auto r = upper_bound_realizer(n);
    const auto res = verify(boolean_lattice(n), r, {VerifyMode::ReflexiveInclusive, 1});
    const double t = seconds_since(start);
    const unsigned want = (5 * n + 5) / 6;
    require(o, r.dimension() == want, "n=" + std::to_string(n) + " has " + std::to_string(r.dimension()) + " orders");
    require(o, res.ok(), "n=" + std::to_string(n) + " fails to verify");
    if (n == 12) {
      require(o, res.pairs_checked == 4096ULL * 4095ULL, "n=12 pair count");
      require(o, t < kUpper12LimitSeconds, "n=12 too slow");
      if (o.pass) o.detail = "n=6..12 orders = ceil(5n/6), n=12 build+verify " + std::to_string(t).substr(0, 5) + " s";
    }
  }
  // Spot-check a mid-size case against the independent oracle.
  require(o, oracle::realizes(512, upper_bound_realizer(9),
                              [](std::size_t a, std::size_t b) { return oracle::subset_leq(a, b); }),
          "naive oracle disagrees at n=9");
  return o;
}

Outcome ac3() {
  Outcome o;
  for (unsigned n = 1; n <= 10; ++n) {
    require(o, verify(boolean_lattice(n), canonical_grid_realizer(n, 2)).ok(),
            "grid realizer fails at n=" + std::to_string(n));
  }
  require(o, exact_dim(boolean_lattice(3), 4).dimension == 3u, "dim(B3) != 3");
  require(o, exact_dim(standard_example(3), 4).dimension == 3u, "dim(S3) != 3");
  require(o, exact_dim(chain(5), 4).dimension == 1u, "dim(chain 5) != 1");
  require(o, oracle::brute_force_dim(boolean_lattice(3)) == 3, "brute-force oracle disagrees on B3");
  if (o.pass) o.detail = "grid realizers n<=10; dim B3=3, S3=3, chain5=1";
  return o;
}

Outcome ac4() {
  Outcome o;
  require(o, mn_lower_bound(3, 2).integer_bound == 2, "(3,2)");
  require(o, mn_lower_bound(6, 2).integer_bound == 3, "(6,2)");
  require(o, mn_lower_bound(13, 2).integer_bound == 4, "(13,2)");
  require(o, min_multiplicity_for_target(3, 3) == 8, "min m for (3,3)");
  for (unsigned n = 2; n <= 6; ++n) {
    std::uint64_t m = 1;
    for (unsigned i = 1; i < n; ++i) m *= n;
    require(o, mn_bound_exceeds(n, m, n), "n^(n-1) test fails at n=" + std::to_string(n));
  }
  // Independent powers with 128-bit integers for the hand values.
  using u128 = unsigned __int128;
  auto pw = [](u128 b, unsigned e) {
    u128 r = 1;
    while (e--) r *= b;
    return r;
  };
  require(o, pw(4, 1) < pw(2, 3) && pw(2, 3) <= pw(4, 2), "oracle (3,2)");
  require(o, pw(7, 2) < pw(2, 6) && pw(2, 6) <= pw(7, 3), "oracle (6,2)");
  require(o, pw(14, 3) < pw(2, 13) && pw(2, 13) <= pw(14, 4), "oracle (13,2)");
  require(o, pw(7, 3) <= pw(19, 2) && pw(8, 3) > pw(22, 2), "oracle min m");
  for (std::uint64_t n = 2; n <= 6; ++n) {
    const u128 m = pw(n, static_cast<unsigned>(n - 1));
    require(o, pw(m, static_cast<unsigned>(n)) > pw(n * (m - 1) + 1, static_cast<unsigned>(n - 1)),
            "oracle n^(n-1)");
  }
  if (o.pass) o.detail = "exact integer comparisons";
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto sigs = signature_map(b6_realizer().orders(), singletons_of_grid(6, 2));
  std::set<Signature> distinct(sigs.begin(), sigs.end());
  require(o, sigs.size() == 64, "signature count");
  require(o, distinct.size() == 64, std::to_string(distinct.size()) + " distinct signatures");
  require(o, !find_signature_collision(sigs).has_value(), "collision reported");
  if (o.pass) o.detail = "64 distinct signatures";
  return o;
}

// Some verified realizer of a small poset, produced one of several ways.
std::pair<Poset, BooleanRealizer> small_realized(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0: {
      const unsigned n = 1 + rng() % 4;
      return {boolean_lattice(n), canonical_grid_realizer(n, 2)};
    }
    case 1: {
      const auto p = standard_example(2 + rng() % 2);
      const auto res = search_realizer(p, p.size() == 4 ? 2 : 3, std::nullopt, SearchEngine::internal());
      return {p, *res.realizer};
    }
    case 2: {
      const unsigned n = 2, m = 2 + rng() % 3;
      return {multiset_grid(n, m), canonical_grid_realizer(n, m)};
    }
    default: {
      while (true) {
        const auto p = oracle::random_poset(2 + rng() % 7, 0.35, rng);
        const auto res = exact_dim(p, 3, {10, 2000, true});
        if (res.dimension) return {p, from_extensions(p, res.witness)};
      }
    }
  }
}

Outcome ac6() {
  Outcome o;
  std::mt19937 rng(20261014);
  int done = 0;
  while (done < kComposeTrials) {
    auto [p, rp] = small_realized(rng);
    auto [q, rq] = small_realized(rng);
    if (p.size() > 16 || q.size() > 16 || rp.dimension() + rq.dimension() > TruthTable::kMaxArity) continue;
    if (!verify(p, rp).ok() || !verify(q, rq).ok()) {
      require(o, false, "an input realizer failed to verify");
      break;
    }
    const auto prod = product(p, q);
    const auto r = compose_product(p, q, rp, rq);
    require(o, r.dimension() == rp.dimension() + rq.dimension(), "dimension is not additive");
    require(o, verify(prod.poset, r).ok(), "trial " + std::to_string(done) + " fails to verify");
    require(o, oracle::realizes(prod.poset, r), "naive oracle disagrees on trial " + std::to_string(done));
    ++done;
  }
  const auto b6 = boolean_lattice(6);
  const auto big = compose_product(b6, b6, b6_realizer(), b6_realizer());
  const auto prod = product(b6, b6);
  const auto res = verify(prod.poset, big);
  require(o, big.dimension() == 10 && prod.poset.size() == 4096, "B6 x B6 shape");
  require(o, res.ok(), "B6 x B6 composition fails");
  if (o.pass) o.detail = std::to_string(done) + " random trials + B6xB6 (4096 elements, 10 orders)";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t posets = 0;
  for (std::size_t n : {4U, 5U}) {
    for (const auto& p : oracle::all_posets(n)) {
      ++posets;
      for (auto mode : {VerifyMode::ReflexiveInclusive, VerifyMode::DistinctOnly}) {
        const auto exact = exact_bdim(p, 2, mode);
        for (unsigned d = 1; d <= 2; ++d) {
          const auto sat = search_realizer(p, d, std::nullopt, SearchEngine::internal(), mode);
          const bool expect = exact.dimension && *exact.dimension <= d;
          require(o, (sat.status == SatStatus::Sat) == expect, "free-phi mismatch on a " + std::to_string(n) + "-element poset");
          if (sat.realizer) {
            require(o, oracle::realizes(p, *sat.realizer, mode == VerifyMode::ReflexiveInclusive),
                    "SAT realizer rejected by oracle");
          }
        }
      }
    }
  }
  require(o, posets == 16 + 63, "corpus size " + std::to_string(posets));

  std::mt19937 rng(8);
  std::vector<Poset> corpus{boolean_lattice(3), standard_example(3), standard_example(4), chain(8), antichain(5)};
  for (int k = 0; k < 20; ++k) corpus.push_back(oracle::random_poset(5 + rng() % 4, 0.35, rng));
  for (const auto& p : corpus) {
    const auto dim = exact_dim(p, 8, {10, 2000, true}).dimension;
    require(o, dim.has_value(), "dimension not found");
    for (unsigned d = 1; d <= 3 && dim; ++d) {
      const auto sat = search_realizer(p, d, and_function(d), SearchEngine::internal());
      require(o, (sat.status == SatStatus::Sat) == (*dim <= d), "AND-phi mismatch");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(posets) + " posets x 2 modes x d<=2; AND on " + std::to_string(corpus.size()) +
               " posets x d<=3";
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto s4 = standard_example(4);
  const auto start = Clock::now();
  const auto report = search_realizer(s4, 4, std::nullopt, SearchEngine::internal());
  const double t = seconds_since(start);
  require(o, report.status == SatStatus::Sat, "not satisfiable");
  require(o, report.realizer && report.realizer->dimension() == 4, "no 4-order realizer");
  require(o, report.realizer && verify(s4, *report.realizer).ok(), "realizer fails to verify");
  require(o, report.realizer && oracle::realizes(s4, *report.realizer), "naive oracle disagrees");
  require(o, t < kStandard4LimitSeconds, "too slow");
  if (o.pass) o.detail = "S4 with 4 orders in " + std::to_string(t).substr(0, 5) + " s";
  return o;
}

Outcome ac9() {
  Outcome o;
  for (const std::string spec : {"boolean:0", "boolean:4", "boolean:6", "grid:2x3", "grid:3x4", "standard:5", "chain:4",
                                 "antichain:4"}) {
    const auto p = load_poset_spec(spec);
    require(o, parse_poset(serialize_poset(p)) == p, "poset round trip " + spec);
  }
  for (const std::string spec : {"builtin:b6", "builtin:upper:6", "builtin:upper:10", "builtin:grid:3x3"}) {
    const auto r = load_realizer_spec(spec);
    require(o, parse_realizer(serialize_realizer(r)) == r, "realizer round trip " + spec);
  }
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    bdim::cli::run(args, out, err);
    return out.str();
  };
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "boolean:6", "builtin:b6"}, {"bounds"}, {"sat", "standard:3", "--d", "3"},
           {"exact", "standard:3", "dim"}, {"dump", "builtin:upper:8"}, {"signatures", "boolean:6", "builtin:b6"}}) {
    require(o, run(args) == run(args), "nondeterministic output for " + args[0]);
  }
  const auto b6 = boolean_lattice(6);
  const BooleanRealizer broken(64, b6_realizer().orders(), and_function(5));
  const auto one = verify(b6, broken, {VerifyMode::ReflexiveInclusive, 1});
  for (unsigned t : {2U, 4U, 8U}) {
    const auto many = verify(b6, broken, {VerifyMode::ReflexiveInclusive, t});
    require(o, many.counterexample == one.counterexample && many.pairs_checked == one.pairs_checked,
            "verify depends on thread count");
  }
  const auto u10 = upper_bound_realizer(10);
  require(o, verify(boolean_lattice(10), u10, {VerifyMode::ReflexiveInclusive, 4}).pairs_checked ==
                 verify(boolean_lattice(10), u10, {VerifyMode::ReflexiveInclusive, 1}).pairs_checked,
          "pair counts depend on thread count");
  if (o.pass) o.detail = "round trips, repeated CLI runs, thread counts 1/2/4/8";
  return o;
}

}  // namespace

int main() {
  report("AC1", "B6 table verifies", ac1);
  report("AC2", "ceil(5n/6) realizers of B6..B12", ac2);
  report("AC3", "dimension witnesses", ac3);
  report("AC4", "exact lower-bound arithmetic", ac4);
  report("AC5", "B6 signatures injective", ac5);
  report("AC6", "product composition", ac6);
  report("AC7", "SAT matches exhaustive search", ac7);
  report("AC8", "S4 Boolean dimension at most 4", ac8);
  report("AC9", "round trips and determinism", ac9);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
