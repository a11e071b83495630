#include <filesystem>
#include <fstream>

#include "bdim/error.hpp"
#include "bdim/io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bdim;

namespace {

const std::vector<std::string> kPosetSpecs{"boolean:0", "boolean:3", "boolean:6", "grid:2x3", "grid:3x3",
                                           "standard:4", "chain:1", "chain:5", "antichain:3"};
const std::vector<std::string> kRealizerSpecs{"builtin:b6", "builtin:upper:7", "builtin:upper:12", "builtin:grid:2x3",
                                              "builtin:grid:4x2"};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadParameter;
}

}  // namespace

TEST_CASE("poset format round trips on the built-in corpus") {
  for (const auto& spec : kPosetSpecs) {
    const auto p = load_poset_spec(spec);
    const auto text = serialize_poset(p);
    const auto back = parse_poset(text);
    CHECK(back == p);
    CHECK(serialize_poset(back) == text);
  }
}

TEST_CASE("realizer format round trips") {
  for (const auto& spec : kRealizerSpecs) {
    const auto r = load_realizer_spec(spec);
    const auto text = serialize_realizer(r);
    CHECK(parse_realizer(text) == r);
    CHECK(serialize_realizer(parse_realizer(text)) == text);
  }
}

TEST_CASE("poset format details") {
  const auto p = parse_poset(
      "# a diamond\n"
      "poset v1\n"
      "n 4\n"
      "label 0 bottom\n"
      "\n"
      "mode relation\n"
      "rel 0 1\nrel 0 2\nrel 1 3\nrel 2 3\nrel 0 3\n");
  CHECK(p.same_order(boolean_lattice(2)));
  CHECK(p.label(0) == "bottom");
  CHECK(p.label(3) == "3");
  CHECK(serialize_poset(boolean_lattice(1)) == "poset v1\nn 2\nlabel 0 {}\nlabel 1 {1}\nmode covers\nrel 0 1\n");

  CHECK(code_of([] { parse_poset("poset v2\nn 1\nmode covers\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_poset("poset v1\nn 2\nrel 0 1\nmode covers\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_poset("poset v1\nn 2\nmode covers\nrel 0 2\n"); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { parse_poset("poset v1\nn 2\nmode covers\nrel 0 1\nrel 1 0\n"); }) == ErrorCode::CycleDetected);
  CHECK(code_of([] { parse_poset("poset v1\nn x\nmode covers\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_poset("poset v1\nn 2\nmode sideways\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("realizer format details") {
  const auto r = parse_realizer("realizer v1\nn 3\nd 1\norder 1: 2 0 1\nphi 01\n");
  CHECK(r.order(0).rank(2) == 0);
  CHECK(code_of([] { parse_realizer("realizer v1\nn 3\nd 1\norder 1: 2 0\nphi 01\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_realizer("realizer v1\nn 3\nd 1\norder 1: 2 0 0\nphi 01\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_realizer("realizer v1\nn 3\nd 1\norder 2: 2 0 1\nphi 01\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_realizer("realizer v1\nn 3\nd 1\norder 1: 2 0 1\nphi 0110\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_realizer("realizer v1\nn 3\nd 1\norder 1: 2 0 1\nphi 01\nextra\n"); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("spec loading") {
  CHECK(load_poset_spec("grid:2x3").size() == 9);
  CHECK(is_poset_family_spec("standard:3"));
  CHECK_FALSE(is_poset_family_spec("./file.txt"));
  CHECK(code_of([] { load_poset_spec("no-such-thing"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_poset_spec("grid:3"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_realizer_spec("builtin:nope"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_realizer_spec("/no/such/file"); }) == ErrorCode::IoError);
  CHECK(load_realizer_spec("builtin:b6") == b6_realizer());

  const auto path = std::filesystem::temp_directory_path() / "bdim_io_test.poset";
  {
    std::ofstream out(path);
    write_poset(standard_example(3), out);
  }
  CHECK(load_poset_spec(path.string()) == standard_example(3));
  std::filesystem::remove(path);
}
