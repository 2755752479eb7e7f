#pragma once

#include <concepts>
#include <cstdint>
#include <type_traits>

namespace cocoon {

// Base for generated label types. Family is a tag type shared by every label
// produced from one set of base policies; Mask holds one bit per policy.
template <class Family, std::uint32_t Mask>
struct label_base {
  using family = Family;
  static constexpr std::uint32_t mask = Mask;
};

template <class T>
concept Label = requires {
  typename T::family;
  { T::mask } -> std::convertible_to<std::uint32_t>;
};

// Specialized by generated headers, one specialization per (Hi, Lo) pair
// where Lo's policies are a subset of Hi's.
template <class Hi, class Lo>
struct more_secret_than : std::false_type {};

template <class Hi, class Lo>
inline constexpr bool more_secret_than_v = more_secret_than<Hi, Lo>::value;

template <class A, class B>
inline constexpr bool same_family_v =
    std::is_same_v<typename A::family, typename B::family>;

template <class Hi, class Lo>
concept MoreSecretThan = Label<Hi> && Label<Lo> && more_secret_than_v<Hi, Lo>;

}  // namespace cocoon
