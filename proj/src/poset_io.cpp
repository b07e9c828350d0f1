#include "latmat/poset_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "latmat/error.hpp"
#include "latmat/text.hpp"

namespace latmat {

namespace {

std::vector<std::int64_t> parse_integers(const std::string& list, std::size_t line_no) {
  std::vector<std::int64_t> values;
  for (const auto& token : split(list, " \t,")) {
    auto v = try_parse_integer(token);
    if (!v) throw ParseError("not an integer: '" + token + "'", line_no);
    values.push_back(*v);
  }
  if (values.empty()) throw ParseError("empty integer list", line_no);
  return values;
}

Poset shorthand(std::string_view key, const std::string& rest, std::size_t line_no) {
  try {
    if (key == "divisors") return divisor_poset(parse_integers(rest, line_no));
    const auto n = parse_integers(rest, line_no);
    if (n.size() != 1 || n[0] < 1) throw ParseError("chain needs one positive length", line_no);
    return chain_poset(static_cast<std::size_t>(n[0]));
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line_no);
  }
}

}  // namespace

Poset parse_poset(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  bool have_elements = false;
  bool in_covers = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = std::string(trim(std::string_view(line).substr(0, line.find('#'))));
    if (body.empty()) continue;
    const auto colon = body.find(':');
    if (colon != std::string::npos) {
      const auto key = std::string(trim(std::string_view(body).substr(0, colon)));
      const auto rest = body.substr(colon + 1);
      if (key == "divisors" || key == "chain") {
        if (have_elements || in_covers) throw ParseError("'" + key + ":' cannot be mixed with elements/covers", line_no);
        // Nothing but comments may follow the shorthand.
        while (std::getline(in, line)) {
          ++line_no;
          if (!trim(std::string_view(line).substr(0, line.find('#'))).empty())
            throw ParseError("unexpected content after '" + key + ":' line", line_no);
        }
        return shorthand(key, rest, line_no);
      }
      if (key == "elements") {
        if (have_elements) throw ParseError("second 'elements:' line", line_no);
        labels = split(rest, " \t");
        if (labels.empty()) throw ParseError("'elements:' lists no labels", line_no);
        have_elements = true;
        in_covers = false;
        continue;
      }
      if (key == "covers") {
        if (!trim(rest).empty()) throw ParseError("'covers:' header takes no values", line_no);
        in_covers = true;
        continue;
      }
      throw ParseError("unknown section '" + key + ":'", line_no);
    }
    if (!in_covers) throw ParseError("pair outside a 'covers:' section", line_no);
    const auto pair = split(body, " \t");
    if (pair.size() != 2) throw ParseError("expected 'x y' cover pair", line_no);
    covers.emplace_back(pair[0], pair[1]);
  }
  if (!have_elements) throw ParseError("missing 'elements:' line");
  try {
    return Poset::from_cover_relations(std::move(labels), covers);
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

Poset poset_from_source(const std::string& source) {
  if (source.rfind("divisors:", 0) == 0 || source.rfind("chain:", 0) == 0) {
    std::istringstream in(source);
    return parse_poset(in);
  }
  std::ifstream in(source);
  if (!in) throw ValidationError("cannot open poset file '" + source + "'");
  return parse_poset(in);
}

void write_poset(std::ostream& out, const Poset& p) {
  out << "elements:";
  for (const auto& l : p.labels()) out << ' ' << l;
  out << "\ncovers:\n";
  for (const auto& [x, y] : p.covers()) out << p.label(x) << ' ' << p.label(y) << '\n';
}

}  // namespace latmat
