#pragma once

namespace cocoon {

template <class T, class L>
class Secret;

template <class T>
class Vetted;

// Marker for operations that bypass enforcement. Generated code passes it to
// the restricted secret operations and to side-effect-free dispatch functions;
// every textual use is an audit point.
struct unsafe_t {
  explicit constexpr unsafe_t() = default;
};
inline constexpr unsafe_t unsafe{};

namespace detail {
template <class...>
inline constexpr bool always_false = false;
}  // namespace detail

}  // namespace cocoon
