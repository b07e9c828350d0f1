#include "latmat/text.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "latmat/error.hpp"

namespace latmat {

std::string format_real(double x, int significant_digits) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, significant_digits);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, std::string_view separators) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto stop = s.find_first_of(separators, start);
    const auto piece = s.substr(start, stop == std::string_view::npos ? s.npos : stop - start);
    if (!piece.empty()) out.emplace_back(piece);
    if (stop == std::string_view::npos) break;
    start = stop + 1;
  }
  return out;
}

std::optional<std::int64_t> try_parse_integer(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

std::optional<double> try_parse_real(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = try_parse_integer(text.substr(0, slash));
    auto den = try_parse_integer(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return static_cast<double>(*num) / static_cast<double>(*den);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

double parse_real(std::string_view text) {
  if (auto v = try_parse_real(text)) return *v;
  throw ParseError("not a number: '" + std::string(text) + "'");
}

}  // namespace latmat
