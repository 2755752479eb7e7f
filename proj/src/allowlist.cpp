#include "cocoon/allowlist.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cocoon {

namespace {

// Keep in sync with data/allowlist.txt; a unit test compares the two.
constexpr std::string_view kBuiltin = R"(
::std::size, 1, container size
::std::empty, 1, container emptiness
::std::min, 2, smaller of two values
::std::max, 2, larger of two values
::std::abs, 1, absolute value
::std::sqrt, 1, square root
::std::floor, 1, round down
::std::ceil, 1, round up
::std::clamp, 3, clamp to range
::std::isdigit, 1, character class
::std::isxdigit, 1, character class
::std::isalpha, 1, character class
::std::tolower, 1, character case
::std::toupper, 1, character case
::std::string, -1, string construction
::std::to_string, 1, number formatting
::std::stoi, 1, number parsing (throws on bad input)
::std::make_pair, 2, pair construction
::std::make_tuple, -1, tuple construction
::std::get, 1, tuple and pair element access
::cocoon::lib::map_get, 2, map lookup returning an optional pointer
::cocoon::lib::option_unwrap, 1, optional access (throws when empty)
)";

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const Allowlist& Allowlist::builtin() {
  static const Allowlist list = parse(kBuiltin);
  return list;
}

Allowlist Allowlist::parse(std::string_view text) {
  Allowlist out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto c1 = line.find(',');
    if (c1 == std::string::npos) throw std::runtime_error("allowlist line " + std::to_string(lineno) + ": missing arity");
    auto c2 = line.find(',', c1 + 1);
    Entry e;
    e.name = trim(line.substr(0, c1));
    std::string ar = trim(line.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
    if (c2 != std::string::npos) e.note = trim(line.substr(c2 + 1));
    if (e.name.rfind("::", 0) != 0)
      throw std::runtime_error("allowlist line " + std::to_string(lineno) + ": '" + e.name +
                               "' is not fully qualified (must start with ::)");
    try {
      std::size_t used = 0;
      e.arity = std::stoi(ar, &used);
      if (used != ar.size() || e.arity < -1) throw std::invalid_argument(ar);
    } catch (const std::exception&) {
      throw std::runtime_error("allowlist line " + std::to_string(lineno) + ": bad arity '" + ar + "'");
    }
    out.entries_.push_back(std::move(e));
  }
  return out;
}

Allowlist Allowlist::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read allowlist " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

bool Allowlist::is_allowlisted(std::string_view qualified_name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == qualified_name; });
}

bool Allowlist::is_allowlisted(std::string_view qualified_name, int argc) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.name == qualified_name && (e.arity < 0 || e.arity == argc);
  });
}

}  // namespace cocoon
