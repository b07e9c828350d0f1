#pragma once

// Locale-independent number formatting and parsing shared by the text formats.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace latmat {

/// Shortest text that reads back to the same double at 17 significant digits.
std::string format_real(double x, int significant_digits = 17);

/// Decimal, or an exact ratio `p/q` of integers. Throws ParseError on malformed text.
double parse_real(std::string_view text);
std::optional<double> try_parse_real(std::string_view text);
std::optional<std::int64_t> try_parse_integer(std::string_view text);

std::string_view trim(std::string_view s);
/// Splits on any of the separator characters, dropping empty pieces.
std::vector<std::string> split(std::string_view s, std::string_view separators = " \t,");

}  // namespace latmat
