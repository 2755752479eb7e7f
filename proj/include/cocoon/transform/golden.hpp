#pragma once

#include <string>
#include <string_view>

namespace cocoon::transform {

// Canonical form of a C++ expression for structural comparison: the tree
// printed in prefix form, so grouping parentheses and whitespace disappear;
// generated temporaries (cocoon_tmp, cocoon_tmp_N) all print as "tmp". A
// trailing ';' is ignored. Throws Rejection on input that does not parse.
std::string canonical_expression(std::string_view code);

}  // namespace cocoon::transform
