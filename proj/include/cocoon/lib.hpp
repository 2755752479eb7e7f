#pragma once

#include <optional>

namespace cocoon::lib {

// Lookup usable from secret contexts: no operator[] insertion, no references
// escaping into optional<T&>.
template <class M, class K>
std::optional<const typename M::mapped_type*> map_get(const M* m, const K* k) {
  auto it = m->find(*k);
  if (it == m->end()) return std::nullopt;
  return &it->second;
}

// Throws std::bad_optional_access on an empty optional. Inside a secret block
// the throw is contained and the block yields its default.
template <class T>
T option_unwrap(std::optional<T> o) {
  return o.value();
}

}  // namespace cocoon::lib
