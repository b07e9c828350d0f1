#pragma once

// Poset text format (UTF-8, line oriented, '#' starts a comment):
//
//   elements: a b c d        whitespace-separated labels
//   covers:                  header; then one "x y" pair per line, x covered by y
//   a b
//   a c
//
// or a single shorthand line
//
//   divisors: 1 2 3 4 6 12   positive integers under divisibility
//   chain: 5                 the chain 1 < 2 < ... < 5

#include <istream>
#include <string>

#include "latmat/poset.hpp"

namespace latmat {

/// Throws ParseError (with line number) on malformed input.
Poset parse_poset(std::istream& in);

/// Inline `divisors:1,2,3`, inline `chain:n`, or a path to a poset file.
Poset poset_from_source(const std::string& source);

/// Writes p in the elements/covers form accepted by parse_poset.
void write_poset(std::ostream& out, const Poset& p);

}  // namespace latmat
