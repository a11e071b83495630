#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "bdim/poset.hpp"
#include "bdim/realizer.hpp"

namespace bdim {

/// `poset v1` text: `n <N>`, `label <i> <text>` lines, `mode covers|relation`,
/// then `rel <i> <j>` lines (i <= j). Written with cover pairs only.
void write_poset(const Poset& p, std::ostream& out);
std::string serialize_poset(const Poset& p);
/// Throws ParseError, plus the errors of from_relation_pairs.
Poset read_poset(std::istream& in);
Poset parse_poset(std::string_view text);

/// `realizer v1` text: `n <N>`, `d <D>`, `order <i>: <elements least to greatest>`
/// for i = 1..D, `phi <2^D bits>`.
void write_realizer(const BooleanRealizer& r, std::ostream& out);
std::string serialize_realizer(const BooleanRealizer& r);
BooleanRealizer read_realizer(std::istream& in);
BooleanRealizer parse_realizer(std::string_view text);

/// `boolean:<n>`, `grid:<n>x<m>`, `standard:<n>`, `chain:<k>`, `antichain:<k>`,
/// otherwise a path to a poset file. Throws ParseError / IoError.
Poset load_poset_spec(const std::string& spec);
/// True if the string names one of the poset families (not a file).
bool is_poset_family_spec(std::string_view spec);

/// `builtin:b6`, `builtin:upper:<n>`, `builtin:grid:<n>x<m>`, otherwise a file path.
BooleanRealizer load_realizer_spec(const std::string& spec);
bool is_builtin_realizer_spec(std::string_view spec);

}  // namespace bdim
