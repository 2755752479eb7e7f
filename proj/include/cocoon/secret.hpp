#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "cocoon/capabilities.hpp"
#include "cocoon/fwd.hpp"
#include "cocoon/label.hpp"

namespace cocoon {

namespace detail {
struct secret_access;
}

// A value of type T readable only inside secret blocks labeled at least L,
// writable only inside blocks labeled exactly L. Same layout as T.
template <class T, class L>
class Secret {
  static_assert(Label<L>, "E-LABEL: Secret's second argument must be a generated label type");
  static_assert(isef_fault_of<T>() != isef_fault::interior_mut,
                "E-INTERIOR-MUT: a Secret payload may not contain interior-mutable cells");
  static_assert(isef_fault_of<T>() != isef_fault::custom_deref,
                "E-CUSTOM-DEREF: a Secret payload may not define a custom dereference operator");
  static_assert(isef_fault_of<T>() != isef_fault::custom_drop,
                "E-CUSTOM-DROP: a Secret payload may not define a custom destructor");
  static_assert(isef_fault_of<T>() != isef_fault::not_isef,
                "E-NOT-ISEF: a Secret payload must be invisible-side-effect-free");
  static_assert(!detail::writable_pointer<T>(), "E-NOT-IMMUTABLE: a Secret payload may not hold writable pointers");
  static_assert(std::is_default_constructible_v<T>,
                "E-NO-DEFAULT: a Secret payload needs a default value for panic containment");

 public:
  using value_type = T;
  using label = L;

  Secret() = default;

  T declassify() const& { return value_; }
  T declassify() && { return std::move(value_); }
  const T& declassify_ref() const { return value_; }
  T& declassify_ref_mut() { return value_; }

  // Reading a Secret as a plain value outside a secret block.
  template <class U>
  operator U() const {
    static_assert(detail::always_false<U>,
                  "E-SECRET-OPAQUE: a Secret cannot be read outside a secret block; use unwrap_secret inside a "
                  "block or an audited declassify call");
    return U{};
  }

 private:
  friend struct detail::secret_access;
  explicit Secret(T v) : value_(std::move(v)) {}

  T value_{};
};

namespace detail {

struct secret_access {
  template <class T, class L>
  static Secret<T, L> make(T v) {
    return Secret<T, L>(std::move(v));
  }
  template <class S>
  static auto&& value(S&& s) {
    return std::forward<S>(s).value_;
  }
  template <class T, class L>
  static T* address(Secret<T, L>* s) {
    return &s->value_;
  }
  template <class T, class L>
  static const T* address(const Secret<T, L>* s) {
    return &s->value_;
  }
};

template <class L, class M>
constexpr void check_family() {
  static_assert(Label<L>, "E-LABEL: a secret block label must be a generated label type");
  static_assert(!Label<L> || same_family_v<L, M>, "E-LABEL-FAMILY: labels come from different label families");
}

template <class L, class M>
constexpr bool check_read() {
  check_family<L, M>();
  static_assert(more_secret_than_v<L, M>,
                "E-READ-UP: the secret's label is not a subset of the block label (illegal read)");
  return more_secret_than_v<L, M>;
}

template <class L, class M>
constexpr bool check_write() {
  check_family<L, M>();
  static_assert(std::is_same_v<L, M>,
                "E-WRITE-DOWN: writable access requires the secret's label to equal the block label");
  return std::is_same_v<L, M>;
}

template <class S>
constexpr void require_secret() {
  static_assert(is_secret_v<std::remove_cvref_t<S>>, "E-NOT-SECRET: argument is not a Secret value");
}

template <class P>
constexpr void require_secret_pointer() {
  static_assert(std::is_pointer_v<P> && is_secret_v<std::remove_pointer_t<P>>,
                "E-NOT-SECRET: argument is not a pointer to a Secret value");
}

}  // namespace detail

// Restricted operations. Only transformer output calls these.

template <class L, class V>
Secret<std::remove_cvref_t<V>, L> secret_new(unsafe_t, V&& v) {
  detail::check_family<L, L>();
  return detail::secret_access::make<std::remove_cvref_t<V>, L>(std::forward<V>(v));
}

template <class L, class S>
auto secret_unwrap(unsafe_t, S&& s) {
  detail::require_secret<S>();
  if constexpr (detail::is_secret_v<std::remove_cvref_t<S>>) {
    using P = std::remove_cvref_t<S>;
    detail::check_read<L, typename P::label>();
    return typename P::value_type(detail::secret_access::value(std::forward<S>(s)));
  }
}

template <class L, class P>
auto secret_unwrap_ref(unsafe_t, P p) {
  detail::require_secret_pointer<P>();
  if constexpr (std::is_pointer_v<P> && detail::is_secret_v<std::remove_pointer_t<P>>) {
    using S = std::remove_cv_t<std::remove_pointer_t<P>>;
    detail::check_read<L, typename S::label>();
    return static_cast<const typename S::value_type*>(detail::secret_access::address(p));
  }
}

template <class L, class P>
auto secret_unwrap_mut_ref(unsafe_t, P p) {
  detail::require_secret_pointer<P>();
  if constexpr (std::is_pointer_v<P> && detail::is_secret_v<std::remove_pointer_t<P>>) {
    using S = std::remove_pointer_t<P>;
    static_assert(!std::is_const_v<S>,
                  "E-MUT-CAPTURE: writable access to a Secret reached through a read-only path");
    detail::check_write<L, typename S::label>();
    return detail::secret_access::address(p);
  }
}

// Return value of a verified side-effect-free function.
template <class T>
class Vetted {
 public:
  static Vetted wrap(unsafe_t, T v) { return Vetted(std::move(v)); }

  template <class A>
    requires(!std::is_same_v<std::remove_cvref_t<A>, unsafe_t>)
  static Vetted wrap(A&&) {
    static_assert(detail::always_false<A>,
                  "E-VETTED-FORGERY: Vetted values are created only by side-effect-free function expansion");
    return Vetted();
  }

  T unwrap(unsafe_t) && { return std::move(value_); }

 private:
  Vetted() = default;
  explicit Vetted(T v) : value_(std::move(v)) {}
  T value_;
};

template <>
class Vetted<void> {
 public:
  static Vetted wrap(unsafe_t) { return Vetted(); }

  template <class A>
    requires(!std::is_same_v<std::remove_cvref_t<A>, unsafe_t>)
  static Vetted wrap(A&&) {
    static_assert(detail::always_false<A>,
                  "E-VETTED-FORGERY: Vetted values are created only by side-effect-free function expansion");
    return Vetted();
  }

  void unwrap(unsafe_t) && {}

 private:
  Vetted() = default;
};

namespace detail {

template <class T>
struct is_vetted : std::false_type {};
template <class T>
struct is_vetted<Vetted<T>> : std::true_type {};

// First argument is not the escape token: used to reject direct calls of
// side-effect-free dispatch functions.
template <class... A>
struct first_is_escape : std::false_type {};
template <class A0, class... A>
struct first_is_escape<A0, A...> : std::is_same<std::remove_cvref_t<A0>, unsafe_t> {};

template <class... A>
concept not_escape_call = !first_is_escape<A...>::value;

}  // namespace detail

// Calls a non-allowlisted callee from a side-effect-free context. The callee
// must be a side-effect-free dispatch function: it accepts the escape token and
// returns Vetted. F receives the token and performs the call.
template <class F>
decltype(auto) call_vetted(unsafe_t, F&& f) {
  if constexpr (std::is_invocable_v<F, unsafe_t>) {
    using R = std::invoke_result_t<F, unsafe_t>;
    static_assert(detail::is_vetted<R>::value,
                  "E-UNVETTED-CALL: callee is not a side-effect-free function (its result is not Vetted)");
    if constexpr (detail::is_vetted<R>::value) return std::forward<F>(f)(unsafe).unwrap(unsafe);
  } else {
    static_assert(std::is_invocable_v<F, unsafe_t>,
                  "E-UNVETTED-CALL: callee is neither allowlisted nor annotated side-effect-free (library calls "
                  "must be fully qualified and allowlisted)");
  }
}

// Outcome of running a secret block body with panics contained.
template <class R>
class Caught {
 public:
  R unwrap_or_default() && {
    static_assert(std::is_default_constructible_v<R>,
                  "E-NO-DEFAULT: a secret block's result needs a default value for panic containment");
    if (value_) return std::move(*value_);
    if constexpr (std::is_default_constructible_v<R>)
      return R{};
    else
      return std::move(*value_);
  }
  bool panicked() const { return !value_.has_value(); }

 private:
  template <class F>
  friend auto catch_unwind(F&& f);
  std::optional<R> value_;
};

template <>
class Caught<void> {
 public:
  void unwrap_or_default() && {}
  bool panicked() const { return panicked_; }

 private:
  template <class F>
  friend auto catch_unwind(F&& f);
  bool panicked_ = false;
};

template <class F>
auto catch_unwind(F&& f) {
  using R = std::invoke_result_t<F>;
  Caught<R> out;
  try {
    if constexpr (std::is_void_v<R>)
      std::forward<F>(f)();
    else
      out.value_.emplace(std::forward<F>(f)());
  } catch (...) {
    if constexpr (std::is_void_v<R>) out.panicked_ = true;
  }
  return out;
}

namespace detail {

template <class R, class L>
struct collection_check {
  static constexpr bool is_collection = false;
  static constexpr bool labels_uniform = true;
  static constexpr bool label_matches = false;
  static constexpr std::size_t arity = 1;
};
template <class L>
struct collection_check<void, L> {
  static constexpr bool is_collection = true;
  static constexpr bool labels_uniform = true;
  static constexpr bool label_matches = true;
  static constexpr std::size_t arity = 0;
};
template <class T, class M, class L>
struct collection_check<Secret<T, M>, L> {
  static constexpr bool is_collection = true;
  static constexpr bool labels_uniform = true;
  static constexpr bool label_matches = std::is_same_v<M, L>;
  static constexpr std::size_t arity = 1;
};
template <class L, class... Ts>
struct tuple_collection {
  static constexpr bool is_collection = (is_secret_v<Ts> && ...);
  template <class S>
  static constexpr bool has_label(const void*) {
    if constexpr (is_secret_v<S>)
      return std::is_same_v<typename S::label, L>;
    else
      return false;
  }
  static constexpr bool label_matches = (has_label<Ts>(nullptr) && ...);
  template <class First, class... Rest>
  static constexpr bool uniform(type_list<First, Rest...>) {
    if constexpr (is_collection)
      return (std::is_same_v<typename First::label, typename Rest::label> && ...);
    else
      return true;
  }
  static constexpr bool uniform(type_list<>) { return true; }
  static constexpr bool labels_uniform = uniform(type_list<Ts...>{});
  static constexpr std::size_t arity = sizeof...(Ts);
};
template <class L, class... Ts>
struct collection_check<std::tuple<Ts...>, L> : tuple_collection<L, Ts...> {};
template <class L, class A, class B>
struct collection_check<std::pair<A, B>, L> : tuple_collection<L, A, B> {};

inline constexpr std::size_t kMaxCollectionArity = 4;

template <class R, class L>
constexpr void require_collection() {
  using C = collection_check<std::remove_cvref_t<R>, L>;
  static_assert(C::is_collection,
                "E-RETURN-LABEL: a secret block must evaluate to a Secret, a tuple of Secrets, or nothing");
  static_assert(!C::is_collection || C::arity <= kMaxCollectionArity,
                "E-TUPLE-ARITY: a secret block may return at most four Secret values");
  static_assert(!C::is_collection || C::labels_uniform,
                "E-MIXED-LABELS: every Secret returned by a secret block must carry the same label");
  static_assert(!C::is_collection || !C::labels_uniform || C::label_matches,
                "E-RETURN-LABEL: a secret block's result must carry exactly the block label");
}

}  // namespace detail

template <class R, class L>
concept SecretCollection = detail::collection_check<std::remove_cvref_t<R>, L>::is_collection &&
                           detail::collection_check<std::remove_cvref_t<R>, L>::labels_uniform &&
                           detail::collection_check<std::remove_cvref_t<R>, L>::label_matches &&
                           detail::collection_check<std::remove_cvref_t<R>, L>::arity <= detail::kMaxCollectionArity;

// Anchor of every secret block. The closure's captures are constrained by the
// transformer (read-only captures except for Secret values).
template <class L, class F>
[[gnu::always_inline]] inline decltype(auto) call_closure(F&& f) {
  static_assert(Label<L>, "E-LABEL: a secret block label must be a generated label type");
  detail::require_collection<std::invoke_result_t<F>, L>();
  return std::forward<F>(f)();
}

}  // namespace cocoon
