#include "bdim/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bdim/error.hpp"

namespace bdim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, std::string("expected a non-negative integer for ") + what + ", got '" +
                                           std::string(s) + "'");
  }
  return v;
}

// Splits "key rest" at the first space.
std::pair<std::string_view, std::string_view> split_key(std::string_view line) {
  const auto sp = line.find(' ');
  if (sp == std::string_view::npos) return {line, {}};
  return {line.substr(0, sp), line.substr(sp + 1)};
}

// Next non-blank, non-comment line; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    line = std::string(t);
    return true;
  }
  return false;
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& message) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + message);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return in;
}

std::pair<unsigned, unsigned> parse_dims(std::string_view s, const char* what) {
  const auto x = s.find('x');
  if (x == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, std::string(what) + " expects <n>x<m>, got '" + std::string(s) + "'");
  }
  return {static_cast<unsigned>(parse_uint(s.substr(0, x), what)),
          static_cast<unsigned>(parse_uint(s.substr(x + 1), what))};
}

}  // namespace

void write_poset(const Poset& p, std::ostream& out) {
  out << "poset v1\n";
  out << "n " << p.size() << '\n';
  for (std::size_t x = 0; x < p.size(); ++x) out << "label " << x << ' ' << p.label(x) << '\n';
  out << "mode covers\n";
  for (const auto& [x, y] : p.cover_pairs()) out << "rel " << x << ' ' << y << '\n';
}

std::string serialize_poset(const Poset& p) {
  std::ostringstream out;
  write_poset(p, out);
  return out.str();
}

Poset read_poset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || line != "poset v1") fail_at(line_no, "expected 'poset v1' header");
  if (!next_line(in, line, line_no)) fail_at(line_no, "missing 'n <count>'");
  auto [key, rest] = split_key(line);
  if (key != "n") fail_at(line_no, "expected 'n <count>'");
  const auto n = parse_uint(rest, "n");
  if (n > Poset::kMaxElements) throw Error(ErrorCode::SizeCap, "poset file declares " + std::to_string(n));

  std::vector<std::string> labels(n);
  std::vector<bool> labelled(n, false);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  PairMode mode = PairMode::Relation;
  bool have_mode = false;
  while (next_line(in, line, line_no)) {
    std::tie(key, rest) = split_key(line);
    if (key == "label") {
      const auto [index, text] = split_key(rest);
      const auto i = parse_uint(index, "label index");
      if (i >= n) fail_at(line_no, "label index out of range");
      labels[i] = std::string(text);
      labelled[i] = true;
    } else if (key == "mode") {
      if (rest == "covers") {
        mode = PairMode::Covers;
      } else if (rest == "relation") {
        mode = PairMode::Relation;
      } else {
        fail_at(line_no, "mode must be covers or relation");
      }
      have_mode = true;
    } else if (key == "rel") {
      if (!have_mode) fail_at(line_no, "'rel' before 'mode'");
      const auto [a, b] = split_key(rest);
      const auto i = parse_uint(a, "rel");
      const auto j = parse_uint(b, "rel");
      if (i >= n || j >= n) throw Error(ErrorCode::IndexOutOfRange, "line " + std::to_string(line_no));
      pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    } else {
      fail_at(line_no, "unknown record '" + std::string(key) + "'");
    }
  }
  if (!have_mode) fail_at(line_no, "missing 'mode covers|relation'");
  for (std::size_t i = 0; i < n; ++i) {
    if (!labelled[i]) labels[i] = std::to_string(i);
  }
  return from_relation_pairs(n, std::move(labels), pairs, mode);
}

Poset parse_poset(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_poset(in);
}

void write_realizer(const BooleanRealizer& r, std::ostream& out) {
  out << "realizer v1\n";
  out << "n " << r.ground_size() << '\n';
  out << "d " << r.dimension() << '\n';
  for (unsigned i = 0; i < r.dimension(); ++i) {
    out << "order " << (i + 1) << ':';
    for (auto e : r.order(i).sequence()) out << ' ' << e;
    out << '\n';
  }
  out << "phi " << r.phi().to_bit_string() << '\n';
}

std::string serialize_realizer(const BooleanRealizer& r) {
  std::ostringstream out;
  write_realizer(r, out);
  return out.str();
}

BooleanRealizer read_realizer(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || line != "realizer v1") fail_at(line_no, "expected 'realizer v1' header");

  auto expect = [&](std::string_view want) {
    if (!next_line(in, line, line_no)) fail_at(line_no, "missing '" + std::string(want) + "'");
    const auto [key, rest] = split_key(line);
    if (key != want) fail_at(line_no, "expected '" + std::string(want) + "'");
    return std::string(rest);
  };
  const auto n = parse_uint(expect("n"), "n");
  if (n > Poset::kMaxElements) throw Error(ErrorCode::SizeCap, "realizer file declares " + std::to_string(n));
  const auto d = parse_uint(expect("d"), "d");
  if (d > TruthTable::kMaxArity) throw Error(ErrorCode::ParseError, "d exceeds 16");

  std::vector<LinearOrder> orders;
  for (std::uint64_t i = 1; i <= d; ++i) {
    const auto rest = expect("order");
    const auto colon = rest.find(':');
    if (colon == std::string::npos || parse_uint(rest.substr(0, colon), "order index") != i) {
      fail_at(line_no, "expected 'order " + std::to_string(i) + ":'");
    }
    std::vector<std::uint32_t> seq;
    seq.reserve(n);
    std::istringstream ls(rest.substr(colon + 1));
    std::string tok;
    while (ls >> tok) seq.push_back(static_cast<std::uint32_t>(parse_uint(tok, "order element")));
    if (seq.size() != n) fail_at(line_no, "order lists " + std::to_string(seq.size()) + " of " + std::to_string(n));
    try {
      orders.push_back(LinearOrder::from_sequence(seq));
    } catch (const Error& e) {
      fail_at(line_no, e.what());
    }
  }
  const auto bits = expect("phi");
  TruthTable phi = TruthTable::from_bit_string(trim(bits));
  if (phi.arity() != d) fail_at(line_no, "phi length must be 2^d");
  if (next_line(in, line, line_no)) fail_at(line_no, "trailing content after phi");
  return BooleanRealizer(n, std::move(orders), std::move(phi));
}

BooleanRealizer parse_realizer(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_realizer(in);
}

bool is_poset_family_spec(std::string_view spec) {
  for (std::string_view prefix : {"boolean:", "grid:", "standard:", "chain:", "antichain:"}) {
    if (spec.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

Poset load_poset_spec(const std::string& spec) {
  const std::string_view s(spec);
  auto arg = [&](std::string_view prefix) { return s.substr(prefix.size()); };
  if (s.rfind("boolean:", 0) == 0) return boolean_lattice(static_cast<unsigned>(parse_uint(arg("boolean:"), "boolean")));
  if (s.rfind("grid:", 0) == 0) {
    const auto [n, m] = parse_dims(arg("grid:"), "grid");
    return multiset_grid(n, m);
  }
  if (s.rfind("standard:", 0) == 0) {
    return standard_example(static_cast<unsigned>(parse_uint(arg("standard:"), "standard")));
  }
  if (s.rfind("chain:", 0) == 0) return chain(parse_uint(arg("chain:"), "chain"));
  if (s.rfind("antichain:", 0) == 0) return antichain(parse_uint(arg("antichain:"), "antichain"));
  if (!std::filesystem::is_regular_file(spec)) {
    throw Error(ErrorCode::ParseError, "unknown poset spec '" + spec + "' (not a family and not a file)");
  }
  auto in = open_input(spec);
  return read_poset(in);
}

bool is_builtin_realizer_spec(std::string_view spec) { return spec.rfind("builtin:", 0) == 0; }

BooleanRealizer load_realizer_spec(const std::string& spec) {
  const std::string_view s(spec);
  if (s == "builtin:b6") return b6_realizer();
  if (s.rfind("builtin:upper:", 0) == 0) {
    return upper_bound_realizer(static_cast<unsigned>(parse_uint(s.substr(14), "builtin:upper")));
  }
  if (s.rfind("builtin:grid:", 0) == 0) {
    const auto [n, m] = parse_dims(s.substr(13), "builtin:grid");
    return canonical_grid_realizer(n, m);
  }
  if (is_builtin_realizer_spec(s)) throw Error(ErrorCode::ParseError, "unknown builtin realizer '" + spec + "'");
  auto in = open_input(spec);
  return read_realizer(in);
}

}  // namespace bdim
