#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cocoon/allowlist.hpp"
#include "cocoon/transform/diagnostics.hpp"

namespace cocoon::transform {

struct TransformOptions {
  std::string filename = "<input>";
  const Allowlist* allowlist = nullptr;  // builtin list when null
  bool line_directive = true;            // emit #line so compiler errors point at the source
};

struct TransformResult {
  std::string output;
  std::vector<Diagnostic> diagnostics;  // sorted by position
  bool ok() const { return diagnostics.empty(); }
};

// Rewrites a source file:
//   secret_block(Label) { body }                     -> dual-variant block expression
//   [[cocoon::side_effect_free]] R f(params) { body } -> trampolines, dispatch, guard
//   struct [[cocoon::derive_isef]] S { fields };     -> capability markers and field checks
// Everything else is copied verbatim; line numbers are preserved.
TransformResult transform_source(std::string_view src, const TransformOptions& opts = {});

// Expansion of a single block, for inspection and golden tests. Throws Rejection.
std::string expand_block_source(std::string_view label, std::string_view body, const Allowlist& allowlist);

}  // namespace cocoon::transform
