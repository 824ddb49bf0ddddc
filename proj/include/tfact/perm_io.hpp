#ifndef TFACT_PERM_IO_HPP
#define TFACT_PERM_IO_HPP

// `.perm` group files (UTF-8, line based):
//   degree <n>
//   gen <cycle notation>        one or more
//   order <N>                   optional; asserted against the stabilizer chain
// Blank lines and lines starting with '#' are ignored.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "tfact/errors.hpp"
#include "tfact/perm_group.hpp"
#include "tfact/permutation.hpp"

namespace tfact {

struct GroupFile {
  PermGroup group;
  std::optional<std::uint64_t> declared_order;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::uint64_t parse_positive(std::string_view text, const std::string& where) {
  text = trim(text);
  if (text.empty()) throw DataError(where + ": missing number");
  std::uint64_t value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw DataError(where + ": not a positive integer: '" + std::string(text) + "'");
    }
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (~std::uint64_t{0} - digit) / 10) throw DataError(where + ": number too large");
    value = value * 10 + digit;
  }
  if (value == 0) throw DataError(where + ": must be positive");
  return value;
}

}  // namespace detail

/// Parses `.perm` text. `name` labels error messages ("<name>:<line>: ...").
inline GroupFile parse_group_text(std::string_view text, const std::string& name) {
  std::optional<std::size_t> degree;
  std::optional<std::uint64_t> order;
  std::vector<Permutation> gens;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = name + ":" + std::to_string(line_no);
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto space = line.find_first_of(" \t");
    const std::string_view keyword = line.substr(0, space);
    const std::string_view rest =
        space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
    if (keyword == "degree") {
      if (degree) throw DataError(where + ": duplicate degree line");
      if (!gens.empty()) throw DataError(where + ": degree must precede generators");
      degree = static_cast<std::size_t>(detail::parse_positive(rest, where));
    } else if (keyword == "gen") {
      if (!degree) throw DataError(where + ": gen before degree");
      try {
        gens.push_back(parse_cycles(rest, *degree));
      } catch (const InputError& e) {
        throw DataError(where + ": " + e.what());
      }
    } else if (keyword == "order") {
      if (order) throw DataError(where + ": duplicate order line");
      order = detail::parse_positive(rest, where);
    } else {
      throw DataError(where + ": unknown keyword '" + std::string(keyword) + "'");
    }
  }
  if (!degree) throw DataError(name + ": missing degree line");
  if (gens.empty()) throw DataError(name + ": no generators");
  PermGroup group(*degree, std::move(gens));
  if (order && group.order() != *order) {
    throw DataError(name + ": declared order " + std::to_string(*order) +
                    " but generators give " + std::to_string(group.order()));
  }
  return GroupFile{std::move(group), order};
}

inline GroupFile load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_group_text(buffer.str(), path);
}

inline std::string format_group_text(const PermGroup& group,
                                     std::optional<std::uint64_t> order = std::nullopt) {
  std::string out = "degree " + std::to_string(group.degree()) + "\n";
  for (const auto& g : group.generators()) out += "gen " + g.to_cycles() + "\n";
  if (order) out += "order " + std::to_string(*order) + "\n";
  return out;
}

}  // namespace tfact

#endif  // TFACT_PERM_IO_HPP
