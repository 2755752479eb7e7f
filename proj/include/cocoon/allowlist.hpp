#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cocoon {

// Library functions trusted to be side effect free when called from secret
// contexts. Matching is on the exact fully qualified name as written at the
// call site (template arguments excluded), so an unqualified or differently
// qualified call never matches.
class Allowlist {
 public:
  struct Entry {
    std::string name;
    int arity = -1;  // -1: any
    std::string note;
  };

  // The list shipped in data/allowlist.txt, compiled in.
  static const Allowlist& builtin();
  // Parses "name, arity, note" lines; '#' starts a comment. Throws
  // std::runtime_error with a line number on malformed input.
  static Allowlist parse(std::string_view text);
  static Allowlist load(const std::string& path);

  bool is_allowlisted(std::string_view qualified_name) const;
  bool is_allowlisted(std::string_view qualified_name, int argc) const;

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace cocoon
