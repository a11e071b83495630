#include <filesystem>
#include <fstream>
#include <random>

#include "bdim/error.hpp"
#include "bdim/search.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bdim;

TEST_CASE("exact dimension of small families") {
  CHECK(exact_dim(boolean_lattice(3), 4).dimension == 3u);
  CHECK(exact_dim(standard_example(3), 4).dimension == 3u);
  CHECK(exact_dim(chain(5), 4).dimension == 1u);
  CHECK(exact_dim(antichain(4), 4).dimension == 2u);
  CHECK_FALSE(exact_dim(standard_example(3), 2).dimension.has_value());
  const auto res = exact_dim(standard_example(4), 4, {10, 2000, true});
  REQUIRE(res.dimension == 4u);
  CHECK(verify(standard_example(4), from_extensions(standard_example(4), res.witness)).ok());
}

TEST_CASE("exact dimension matches brute force") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& p : oracle::all_posets(n)) {
      const auto res = exact_dim(p, static_cast<unsigned>(n));
      REQUIRE(res.dimension.has_value());
      CHECK(*res.dimension == oracle::brute_force_dim(p));
      CHECK(oracle::realizes(p, from_extensions(p, res.witness)));
    }
  }
}

TEST_CASE("exact dimension guards") {
  CHECK_THROWS_AS(exact_dim(antichain(11), 3), Error);
  CHECK_THROWS_AS(exact_dim(antichain(8), 3), Error);  // 40320 extensions
}

TEST_CASE("phi consistency") {
  const std::vector<std::uint32_t> l1{0, 1, 2, 3}, l2{0, 2, 1, 3};
  const std::vector<LinearOrder> ext{LinearOrder::from_sequence(l1), LinearOrder::from_sequence(l2)};
  const auto c = phi_consistent(boolean_lattice(2), ext);
  REQUIRE(c.consistent());
  CHECK(c.table->to_bit_string() == "0001");

  const std::vector<LinearOrder> one{LinearOrder::identity(4)};
  const auto bad = phi_consistent(boolean_lattice(2), one);
  CHECK_FALSE(bad.consistent());
}

TEST_CASE("exact Boolean dimension of small cases") {
  const auto strict = exact_bdim(antichain(2), 3, VerifyMode::ReflexiveInclusive);
  CHECK(strict.dimension == 2u);
  CHECK(exact_bdim(antichain(2), 3, VerifyMode::DistinctOnly).dimension == 1u);
  for (auto mode : {VerifyMode::ReflexiveInclusive, VerifyMode::DistinctOnly}) {
    const auto b2 = exact_bdim(boolean_lattice(2), 3, mode);
    REQUIRE(b2.dimension == 2u);
    CHECK(verify(boolean_lattice(2), *b2.witness, {mode, 1}).ok());
  }
  CHECK(exact_bdim(chain(4), 2).dimension == 1u);
  CHECK_THROWS_AS(exact_bdim(chain(6), 2), Error);
}

TEST_CASE("symmetry reduction does not change the answer") {
  for (const auto& p : oracle::all_posets(4)) {
    for (auto mode : {VerifyMode::ReflexiveInclusive, VerifyMode::DistinctOnly}) {
      const auto fast = exact_bdim(p, 2, mode, {5, 3, false, true});
      const auto full = exact_bdim(p, 2, mode, {5, 3, false, false});
      CHECK(fast.dimension == full.dimension);
    }
  }
}

TEST_CASE("free-phi SAT agrees with exhaustive search on all 4-element posets") {
  for (const auto& p : oracle::all_posets(4)) {
    for (auto mode : {VerifyMode::ReflexiveInclusive, VerifyMode::DistinctOnly}) {
      const auto exact = exact_bdim(p, 2, mode);
      for (unsigned d = 1; d <= 2; ++d) {
        const auto report = search_realizer(p, d, std::nullopt, SearchEngine::internal(), mode);
        const bool expect = exact.dimension && *exact.dimension <= d;
        CHECK((report.status == SatStatus::Sat) == expect);
        if (report.realizer) CHECK(oracle::realizes(p, *report.realizer, mode == VerifyMode::ReflexiveInclusive));
      }
    }
  }
}

TEST_CASE("AND-phi SAT agrees with exact dimension") {
  std::mt19937 rng(31);
  std::vector<Poset> corpus{boolean_lattice(3), standard_example(3), standard_example(4), chain(6)};
  for (int k = 0; k < 12; ++k) corpus.push_back(oracle::random_poset(5 + rng() % 3, 0.4, rng));
  for (const auto& p : corpus) {
    const auto dim = exact_dim(p, 4, {10, 5040, true}).dimension;
    REQUIRE(dim.has_value());
    for (unsigned d = 1; d <= 3; ++d) {
      const auto report = search_realizer(p, d, and_function(d), SearchEngine::internal());
      CHECK((report.status == SatStatus::Sat) == (*dim <= d));
    }
  }
}

TEST_CASE("decode: B3 with AND at d=3") {
  const auto b3 = boolean_lattice(3);
  const auto cnf = encode_bdim_sat(b3, 3, and_function(3));
  const auto result = internal_sat_solve(cnf);
  REQUIRE(result.status == SatStatus::Sat);
  const auto r = decode_model(cnf, result.assignment, b3, 3, and_function(3));
  CHECK(verify(b3, r).ok());
  CHECK(r.phi() == and_function(3));
  for (const auto& o : r.orders()) CHECK(is_linear_extension(b3, o));
}

TEST_CASE("decode rejects tampered models") {
  const auto b3 = boolean_lattice(3);
  const auto cnf = encode_bdim_sat(b3, 3, and_function(3));
  const auto result = internal_sat_solve(cnf);
  REQUIRE(result.status == SatStatus::Sat);
  RealizerVarLayout layout{8, 3, false};
  // Flip the bottom-vs-top variable of order 1: the relation stops being transitive.
  auto tampered = result.assignment;
  const int v = layout.order_var(0, 0, 7);
  tampered[v] = !tampered[v];
  try {
    decode_model(cnf, tampered, b3, 3, and_function(3));
    FAIL("expected DecodeInconsistent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DecodeInconsistent);
  }
}

TEST_CASE("search_realizer end to end") {
  const auto s4 = search_realizer(standard_example(4), 4, std::nullopt, SearchEngine::internal());
  REQUIRE(s4.status == SatStatus::Sat);
  CHECK(s4.realizer->dimension() == 4);
  CHECK(oracle::realizes(standard_example(4), *s4.realizer));

  const auto b2 = search_realizer(boolean_lattice(2), 1, std::nullopt, SearchEngine::internal());
  CHECK(b2.status == SatStatus::Unsat);
  CHECK(b2.verified);
  CHECK_FALSE(b2.realizer.has_value());
}

TEST_CASE("emit only writes DIMACS with a varmap sidecar") {
  const auto dir = std::filesystem::temp_directory_path() / "bdim_emit_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "b6.cnf").string();
  const auto report = search_realizer(boolean_lattice(6), 5, threshold_at_most_one_zero(5),
                                      SearchEngine::emit_only(path), VerifyMode::ReflexiveInclusive,
                                      EncodeGuards{8, 128, false});
  CHECK(report.status == SatStatus::Unknown);
  CHECK(report.dimacs_path == path);
  CHECK(report.varmap_path == path + ".varmap");
  std::ifstream in(path), vm(path + ".varmap");
  REQUIRE(in);
  REQUIRE(vm);
  auto cnf = read_dimacs(in);
  read_varmap(vm, cnf);
  RealizerVarLayout layout{64, 5, false};
  CHECK(cnf.variable_count == layout.variable_count());
  CHECK(cnf.meaning(layout.order_var(4, 62, 63)).order == 4);

  // The B6 table satisfies the emitted instance.
  const auto r = b6_realizer();
  std::vector<bool> a(cnf.variable_count + 1);
  for (unsigned i = 0; i < 5; ++i)
    for (std::size_t x = 0; x < 64; ++x)
      for (std::size_t y = x + 1; y < 64; ++y) a[layout.order_var(i, x, y)] = r.order(i).rank(x) < r.order(i).rank(y);
  CHECK_FALSE(first_falsified_clause(cnf, a).has_value());
  const auto decoded = decode_model(cnf, a, boolean_lattice(6), 5, threshold_at_most_one_zero(5));
  CHECK(decoded.orders() == r.orders());
  std::filesystem::remove_all(dir);
}

TEST_CASE("external engine through the bundled solver") {
  const std::string cmd = std::string(BDIM_CLI_PATH) + " dimacs-solve {cnf}";
  const auto report = search_realizer(standard_example(3), 3, std::nullopt, SearchEngine::external(cmd));
  REQUIRE(report.status == SatStatus::Sat);
  CHECK(verify(standard_example(3), *report.realizer).ok());
  // An external UNSAT is passed through but flagged as unverified.
  const auto unsat = search_realizer(boolean_lattice(2), 1, std::nullopt, SearchEngine::external(cmd));
  CHECK(unsat.status == SatStatus::Unsat);
  CHECK_FALSE(unsat.verified);
}
