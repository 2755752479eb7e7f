#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cocoon/secret.hpp"

namespace cocoon {

// Reinterprets containers of Secret as containers of the payload without copying.

template <class T, class L>
std::shared_ptr<T> declassify_transmute(const std::shared_ptr<Secret<T, L>>& p) {
  if (!p) return {};
  return std::shared_ptr<T>(p, detail::secret_access::address(p.get()));
}

template <class T, class L, std::size_t E>
std::span<T, E> declassify_transmute(std::span<Secret<T, L>, E> s) {
  static_assert(sizeof(Secret<T, L>) == sizeof(T) && alignof(Secret<T, L>) == alignof(T));
  return std::span<T, E>(reinterpret_cast<T*>(s.data()), s.size());
}

template <class T, class L>
std::span<T> declassify_transmute(std::vector<Secret<T, L>>& v) {
  return declassify_transmute(std::span<Secret<T, L>>(v));
}

template <class T, class L, std::size_t N>
std::array<T, N>& declassify_transmute(std::array<Secret<T, L>, N>& a) {
  static_assert(sizeof(std::array<Secret<T, L>, N>) == sizeof(std::array<T, N>));
  return *reinterpret_cast<std::array<T, N>*>(a.data());
}

template <class C>
void declassify_transmute(const C&) {
  static_assert(detail::always_false<C>,
                "E-TRANSMUTE: declassify_transmute applies to shared_ptr, span, vector and array of Secret");
}

}  // namespace cocoon
