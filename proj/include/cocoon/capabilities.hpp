#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "cocoon/fwd.hpp"

namespace cocoon {

template <class... Ts>
struct type_list {};

namespace detail {

// Component types of trusted library containers and of derived records.
// `known` is false for types the library knows nothing about.
template <class T>
struct parts {
  static constexpr bool known = false;
  using type = type_list<>;
};

template <class T, std::size_t N>
struct parts<T[N]> {
  static constexpr bool known = true;
  using type = type_list<T>;
};
template <class T, std::size_t N>
struct parts<std::array<T, N>> {
  static constexpr bool known = true;
  using type = type_list<T>;
};
template <class T>
struct parts<std::vector<T>> {
  static constexpr bool known = true;
  using type = type_list<T>;
};
template <class T>
struct parts<std::optional<T>> {
  static constexpr bool known = true;
  using type = type_list<T>;
};
template <class A, class B>
struct parts<std::pair<A, B>> {
  static constexpr bool known = true;
  using type = type_list<A, B>;
};
template <class... Ts>
struct parts<std::tuple<Ts...>> {
  static constexpr bool known = true;
  using type = type_list<Ts...>;
};
template <class K, class V>
struct parts<std::map<K, V>> {
  static constexpr bool known = true;
  using type = type_list<K, V>;
};
template <class K, class V>
struct parts<std::unordered_map<K, V>> {
  static constexpr bool known = true;
  using type = type_list<K, V>;
};
template <class K>
struct parts<std::set<K>> {
  static constexpr bool known = true;
  using type = type_list<K>;
};
template <class T, class L>
struct parts<Secret<T, L>> {
  static constexpr bool known = true;
  using type = type_list<T>;
};
template <class T>
struct parts<Vetted<T>> {
  static constexpr bool known = true;
  using type = type_list<T>;
};

// Records opted in through the derive annotation carry their own field list.
template <class T>
concept derived_record = requires {
  typename T::cocoon_isef_self;
  typename T::cocoon_isef_fields;
} && std::is_same_v<typename T::cocoon_isef_self, T>;

template <class T>
struct fields_of {
  using type = type_list<>;
};
template <derived_record T>
struct fields_of<T> {
  using type = typename T::cocoon_isef_fields;
};

template <class T>
using parts_t = std::conditional_t<derived_record<T>, typename fields_of<T>::type, typename parts<T>::type>;

template <class T>
inline constexpr bool trusted_leaf_v =
    std::is_arithmetic_v<T> || std::is_enum_v<T> || std::is_same_v<T, std::nullptr_t> ||
    std::is_same_v<T, std::string> || std::is_same_v<T, std::string_view> || std::is_same_v<T, std::monostate>;

// Cells whose state changes through shared access: atomics, locks and
// condition variables. Recognized by shape so their headers stay optional;
// specialize interior_leaf_v for other cell types.
template <class T>
concept sync_cell = std::is_class_v<T> && !std::is_copy_constructible_v<T> && !std::is_move_constructible_v<T> &&
                    (requires(T& t) {
                      t.lock();
                      t.unlock();
                    } || requires(T& t) { t.store(t.load()); } ||
                     requires(T& t) {
                       t.notify_one();
                       t.notify_all();
                     } || requires(T& t) {
                       t.test_and_set();
                       t.clear();
                     });

template <class T>
inline constexpr bool interior_leaf_v = sync_cell<T>;

template <class T>
concept has_custom_deref = std::is_class_v<T> && (requires(T& t) { t.operator*(); } || requires(T& t) { t.operator->(); });

template <class List>
struct all_trivially_destructible;
template <class... Ts>
struct all_trivially_destructible<type_list<Ts...>>
    : std::bool_constant<(std::is_trivially_destructible_v<Ts> && ...)> {};

template <class T>
constexpr bool custom_drop() {
  if constexpr (!std::is_class_v<T> || trusted_leaf_v<T> || parts<T>::known) {
    return false;
  } else if constexpr (derived_record<T>) {
    // A user-written destructor is only observable when every field is trivial.
    return !std::is_trivially_destructible_v<T> && all_trivially_destructible<parts_t<T>>::value;
  } else {
    return !std::is_trivially_destructible_v<T>;
  }
}

}  // namespace detail

enum class isef_fault { none, interior_mut, custom_deref, custom_drop, not_isef };

template <class T>
constexpr isef_fault isef_fault_of();

namespace detail {

template <class... Ts>
constexpr isef_fault first_fault(type_list<Ts...>) {
  isef_fault f = isef_fault::none;
  ((f == isef_fault::none ? (void)(f = isef_fault_of<Ts>()) : (void)0), ...);
  return f;
}

}  // namespace detail

// Why T fails to be invisible-side-effect-free, or none.
template <class T0>
constexpr isef_fault isef_fault_of() {
  using T = std::remove_cv_t<std::remove_reference_t<T0>>;
  if constexpr (detail::trusted_leaf_v<T>) {
    return isef_fault::none;
  } else if constexpr (std::is_pointer_v<T>) {
    using P = std::remove_cv_t<std::remove_pointer_t<T>>;
    if constexpr (std::is_function_v<P> || std::is_void_v<P>)
      return isef_fault::not_isef;
    else
      return isef_fault_of<P>();
  } else if constexpr (detail::interior_leaf_v<T>) {
    return isef_fault::interior_mut;
  } else if constexpr (detail::parts<T>::known || detail::derived_record<T>) {
    if constexpr (detail::derived_record<T> && detail::has_custom_deref<T>) return isef_fault::custom_deref;
    if constexpr (detail::custom_drop<T>()) return isef_fault::custom_drop;
    return detail::first_fault(detail::parts_t<T>{});
  } else if constexpr (detail::has_custom_deref<T>) {
    return isef_fault::custom_deref;
  } else if constexpr (detail::custom_drop<T>()) {
    return isef_fault::custom_drop;
  } else {
    return isef_fault::not_isef;
  }
}

template <class T>
inline constexpr bool is_isef_v = isef_fault_of<T>() == isef_fault::none;

template <class T>
concept InvisibleSideEffectFree = is_isef_v<T>;

namespace detail {

template <class T>
constexpr bool interior_mutable();
template <class... Ts>
constexpr bool any_interior(type_list<Ts...>) {
  return (interior_mutable<Ts>() || ...);
}
template <class T0>
constexpr bool interior_mutable() {
  using T = std::remove_cv_t<std::remove_reference_t<T0>>;
  if constexpr (interior_leaf_v<T>)
    return true;
  else
    return any_interior(parts_t<T>{});
}

template <class T>
struct is_secret : std::false_type {};
template <class T, class L>
struct is_secret<Secret<T, L>> : std::true_type {};
template <class T>
inline constexpr bool is_secret_v = is_secret<std::remove_cv_t<T>>::value;

// Writable pointer to anything but a Secret, directly or inside a component.
template <class T>
constexpr bool writable_pointer();
template <class... Ts>
constexpr bool any_writable_pointer(type_list<Ts...>) {
  return (writable_pointer<Ts>() || ...);
}
template <class T0>
constexpr bool writable_pointer() {
  using T = std::remove_cv_t<std::remove_reference_t<T0>>;
  if constexpr (std::is_pointer_v<T>) {
    using P = std::remove_pointer_t<T>;
    return !std::is_const_v<P> && !is_secret_v<P>;
  } else {
    return any_writable_pointer(parts_t<T>{});
  }
}

template <class T>
constexpr bool contains_secret();
template <class... Ts>
constexpr bool any_secret(type_list<Ts...>) {
  return (contains_secret<Ts>() || ...);
}
template <class T0>
constexpr bool contains_secret() {
  using T = std::remove_cv_t<std::remove_reference_t<T0>>;
  if constexpr (is_secret_v<T>)
    return true;
  else if constexpr (std::is_pointer_v<T>)
    return false;
  else
    return any_secret(parts_t<T>{});
}

}  // namespace detail

template <class T>
inline constexpr bool is_immutable_v = !detail::interior_mutable<T>() && !detail::writable_pointer<T>();

template <class T>
concept Immutable = is_immutable_v<T>;

template <class T>
concept SecretValueSafe = Immutable<T> && InvisibleSideEffectFree<T> && std::default_initializable<T>;

template <class T>
inline constexpr bool contains_secret_v = detail::contains_secret<T>();

namespace detail {

template <class T>
constexpr void require_isef() {
  constexpr isef_fault f = isef_fault_of<T>();
  static_assert(f != isef_fault::interior_mut,
                "E-INTERIOR-MUT: type holds an interior-mutable cell and cannot be used in a side-effect-free context");
  static_assert(f != isef_fault::custom_deref,
                "E-CUSTOM-DEREF: type defines a custom dereference operator and cannot be used in a side-effect-free "
                "context");
  static_assert(f != isef_fault::custom_drop,
                "E-CUSTOM-DROP: type defines a custom destructor and cannot be used in a side-effect-free context");
  static_assert(f != isef_fault::not_isef,
                "E-NOT-ISEF: type is not invisible-side-effect-free; annotate it with [[cocoon::derive_isef]]");
}

template <class T>
constexpr void require_vsef() {
  require_isef<T>();
  static_assert(!writable_pointer<T>(),
                "E-MUT-CAPTURE: a secret context may not capture a writable pointer to non-Secret data");
}

}  // namespace detail

// Identity checks inserted by the transformer into the checked variant.

template <class T>
constexpr T check_ISEF(T&& v) {
  detail::require_isef<T>();
  return static_cast<T&&>(v);
}

template <class T>
constexpr T* check_ISEF_ref(T* p) {
  detail::require_isef<T>();
  return p;
}

// Only ever emitted in code that never runs; yields a read-only view so the
// checked variant of a variable use type-checks.
template <class T>
constexpr const T& check_ISEF_unsafe(T* p) {
  detail::require_isef<T>();
  return *p;
}

template <class T>
constexpr T* check_not_mut_secret(T* p) {
  static_assert(!std::is_const_v<T>,
                "E-MUT-CAPTURE: assignment to a read-only location; a secret context may only write its own locals "
                "and Secret values reached through unwrap_secret_mut_ref");
  static_assert(std::is_const_v<T> || !detail::contains_secret<T>(),
                "E-ASSIGN-SECRET: assignment to a Secret value must go through unwrap_secret_mut_ref");
  return p;
}

// Closure-boundary checks for variables a secret context captures.
template <class... Ts>
constexpr void check_VSEF() {
  (detail::require_vsef<std::remove_reference_t<Ts>>(), ...);
}

// Variables the body writes to or takes the address of are captured through
// this: writable only when the variable is itself a Secret.
template <class T>
constexpr decltype(auto) vsef_capture(T& v) {
  detail::require_vsef<T>();
  if constexpr (detail::is_secret_v<T>)
    return (v);
  else
    return static_cast<const T&>(v);
}

// Operator replacements. Operands must be built-in types so the operator can
// never dispatch to application code.

namespace detail {

template <class T>
inline constexpr bool builtin_arith_v = std::is_arithmetic_v<std::remove_cvref_t<T>>;

template <class T>
inline constexpr bool builtin_compare_v = builtin_arith_v<T> || std::is_enum_v<std::remove_cvref_t<T>> ||
                                          std::is_pointer_v<std::remove_cvref_t<T>> ||
                                          std::is_same_v<std::remove_cvref_t<T>, std::nullptr_t> ||
                                          std::is_same_v<std::remove_cvref_t<T>, std::string> ||
                                          std::is_same_v<std::remove_cvref_t<T>, std::string_view>;

template <class A, class B>
constexpr void require_arith() {
  static_assert(builtin_arith_v<A> && builtin_arith_v<B>,
                "E-OPERATOR-OVERLOAD: operators in a side-effect-free context apply only to built-in arithmetic "
                "types");
}

template <class A, class B>
constexpr void require_compare() {
  static_assert(builtin_compare_v<A> && builtin_compare_v<B>,
                "E-OPERATOR-OVERLOAD: comparisons in a side-effect-free context apply only to built-in types and "
                "standard strings");
}

}  // namespace detail

// Rewritten operands lose the literal context g++ uses to skip sign warnings.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wsign-compare"
#define COCOON_SAFE_BINARY(NAME, OP, REQ)                     \
  template <class A, class B>                                 \
  constexpr auto NAME(const A& a, const B& b) {               \
    detail::REQ<A, B>();                                      \
    if constexpr (detail::builtin_compare_v<A> && detail::builtin_compare_v<B>) \
      return a OP b;                                          \
    else                                                      \
      return 0;                                               \
  }

COCOON_SAFE_BINARY(safe_add, +, require_arith)
COCOON_SAFE_BINARY(safe_sub, -, require_arith)
COCOON_SAFE_BINARY(safe_mul, *, require_arith)
COCOON_SAFE_BINARY(safe_div, /, require_arith)
COCOON_SAFE_BINARY(safe_rem, %, require_arith)
COCOON_SAFE_BINARY(safe_bitand, &, require_arith)
COCOON_SAFE_BINARY(safe_bitor, |, require_arith)
COCOON_SAFE_BINARY(safe_bitxor, ^, require_arith)
COCOON_SAFE_BINARY(safe_shl, <<, require_arith)
COCOON_SAFE_BINARY(safe_shr, >>, require_arith)
COCOON_SAFE_BINARY(safe_eq, ==, require_compare)
COCOON_SAFE_BINARY(safe_ne, !=, require_compare)
COCOON_SAFE_BINARY(safe_lt, <, require_compare)
COCOON_SAFE_BINARY(safe_le, <=, require_compare)
COCOON_SAFE_BINARY(safe_gt, >, require_compare)
COCOON_SAFE_BINARY(safe_ge, >=, require_compare)
#undef COCOON_SAFE_BINARY
#pragma GCC diagnostic pop

#define COCOON_SAFE_ASSIGN(NAME, OP)                          \
  template <class T, class B>                                 \
  constexpr T& NAME(T* p, const B& b) {                       \
    static_assert(!std::is_const_v<T>, "E-MUT-CAPTURE: compound assignment to a read-only location"); \
    detail::require_arith<T, B>();                            \
    if constexpr (!std::is_const_v<T> && detail::builtin_arith_v<T> && detail::builtin_arith_v<B>) \
      *p OP b;                                                \
    return *p;                                                \
  }

COCOON_SAFE_ASSIGN(safe_add_assign, +=)
COCOON_SAFE_ASSIGN(safe_sub_assign, -=)
COCOON_SAFE_ASSIGN(safe_mul_assign, *=)
COCOON_SAFE_ASSIGN(safe_div_assign, /=)
COCOON_SAFE_ASSIGN(safe_rem_assign, %=)
COCOON_SAFE_ASSIGN(safe_bitand_assign, &=)
COCOON_SAFE_ASSIGN(safe_bitor_assign, |=)
COCOON_SAFE_ASSIGN(safe_bitxor_assign, ^=)
COCOON_SAFE_ASSIGN(safe_shl_assign, <<=)
COCOON_SAFE_ASSIGN(safe_shr_assign, >>=)
#undef COCOON_SAFE_ASSIGN

template <class A>
constexpr auto safe_neg(const A& a) {
  detail::require_arith<A, A>();
  if constexpr (detail::builtin_arith_v<A>)
    return -a;
  else
    return 0;
}

template <class A>
constexpr auto safe_pos(const A& a) {
  detail::require_arith<A, A>();
  if constexpr (detail::builtin_arith_v<A>)
    return +a;
  else
    return 0;
}

template <class A>
constexpr bool safe_not(const A& a) {
  detail::require_arith<A, A>();
  if constexpr (detail::builtin_arith_v<A>)
    return !a;
  else
    return false;
}

template <class A>
constexpr auto safe_bitnot(const A& a) {
  detail::require_arith<A, A>();
  if constexpr (detail::builtin_arith_v<A>)
    return ~a;
  else
    return 0;
}

// Conditions and operands of && and ||: a class type here would run a
// user-defined conversion to bool.
template <class A>
constexpr bool safe_bool(const A& a) {
  using B = std::remove_cvref_t<A>;
  constexpr bool builtin = std::is_arithmetic_v<B> || std::is_pointer_v<B> || std::is_enum_v<B> ||
                           std::is_same_v<B, std::nullptr_t>;
  static_assert(builtin,
                "E-OPERATOR-OVERLOAD: conditions in a side-effect-free context must have built-in scalar type");
  if constexpr (builtin)
    return static_cast<bool>(a);
  else
    return false;
}

#define COCOON_SAFE_STEP(NAME, EXPR, RET)                     \
  template <class T>                                          \
  constexpr RET NAME(T* p) {                                  \
    static_assert(!std::is_const_v<T>, "E-MUT-CAPTURE: increment or decrement of a read-only location"); \
    detail::require_arith<T, T>();                            \
    if constexpr (!std::is_const_v<T> && detail::builtin_arith_v<T>) \
      return EXPR;                                            \
    else                                                      \
      return *p;                                              \
  }

COCOON_SAFE_STEP(safe_pre_inc, ++*p, T&)
COCOON_SAFE_STEP(safe_pre_dec, --*p, T&)
COCOON_SAFE_STEP(safe_post_inc, (*p)++, T)
COCOON_SAFE_STEP(safe_post_dec, (*p)--, T)
#undef COCOON_SAFE_STEP

namespace detail {

template <class C>
inline constexpr bool indexable_v = false;
template <class T, std::size_t N>
inline constexpr bool indexable_v<T[N]> = true;
template <class T>
inline constexpr bool indexable_v<T*> = true;
template <class T, std::size_t N>
inline constexpr bool indexable_v<std::array<T, N>> = true;
template <class T>
inline constexpr bool indexable_v<std::vector<T>> = true;
template <>
inline constexpr bool indexable_v<std::string> = true;
template <>
inline constexpr bool indexable_v<std::string_view> = true;

}  // namespace detail

// Indexing restricted to built-in arrays, pointers and sequence containers.
template <class C, class I>
constexpr decltype(auto) safe_index(C&& c, const I& i) {
  using Base = std::remove_cv_t<std::remove_reference_t<C>>;
  static_assert(detail::indexable_v<Base>,
                "E-OPERATOR-OVERLOAD: indexing in a side-effect-free context applies only to arrays, pointers and "
                "standard sequences");
  static_assert(std::is_integral_v<I> || std::is_enum_v<I>, "E-OPERATOR-OVERLOAD: index must be an integer");
  return std::forward<C>(c)[i];
}

template <class To, class From>
constexpr To safe_cast(const From& v) {
  static_assert((std::is_arithmetic_v<To> || std::is_enum_v<To>) &&
                    (std::is_arithmetic_v<From> || std::is_enum_v<From>),
                "E-OPERATOR-OVERLOAD: casts in a side-effect-free context apply only to built-in arithmetic and "
                "enumeration types");
  if constexpr ((std::is_arithmetic_v<To> || std::is_enum_v<To>) && (std::is_arithmetic_v<From> || std::is_enum_v<From>))
    return static_cast<To>(v);
  else
    return To{};
}

// Aggregate construction of an application record from a secret context.
template <class T>
constexpr T check_construct(T&& v) {
  detail::require_isef<T>();
  static_assert(std::is_aggregate_v<T> || detail::parts<T>::known || detail::trusted_leaf_v<T>,
                "E-UNVETTED-CALL: constructing a non-aggregate type would run an application constructor");
  return static_cast<T&&>(v);
}

// Type of a local declared in a secret context.
template <class T>
constexpr void check_local() {
  using U = std::remove_cvref_t<T>;
  detail::require_isef<U>();
  static_assert(!std::is_class_v<U> || std::is_aggregate_v<U> || detail::parts<U>::known || detail::trusted_leaf_v<U>,
                "E-UNVETTED-CALL: a local of this type would run an application constructor");
}

}  // namespace cocoon
