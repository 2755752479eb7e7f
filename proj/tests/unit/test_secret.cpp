#include <doctest.h>

#include <atomic>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "cocoon/cocoon.hpp"
#include "cocoon/transmute.hpp"
#include "cocoon_labels.hpp"

using namespace cocoon;
using lat::Label_A;
using lat::Label_AB;
using lat::Label_B;
using lat::Label_Empty;

namespace {

struct Noisy {
  ~Noisy() {}
  int x = 0;
};
struct Deref {
  int operator*() const { return 1; }
};
struct Plain {
  int x;
};
struct WithAtomic {
  std::atomic<int> a;
};

}  // namespace

TEST_CASE("label order comes from the generated header") {
  static_assert(more_secret_than_v<Label_AB, Label_A>);
  static_assert(more_secret_than_v<Label_A, Label_A>);
  static_assert(more_secret_than_v<Label_A, Label_Empty>);
  static_assert(!more_secret_than_v<Label_A, Label_B>);
  static_assert(!more_secret_than_v<Label_Empty, Label_AB>);
  static_assert(Label<Label_AB>);
  CHECK(std::string(Label_AB::name) == "Label_AB");
}

TEST_CASE("representation transparency") {
  static_assert(sizeof(Secret<int, Label_A>) == sizeof(int));
  static_assert(sizeof(Secret<bool, Label_A>) == sizeof(bool));
  static_assert(sizeof(Secret<std::string, Label_AB>) == sizeof(std::string));
  static_assert(sizeof(Secret<std::array<double, 7>, Label_B>) == sizeof(std::array<double, 7>));
  static_assert(sizeof(Secret<std::vector<int>, Label_Empty>) == sizeof(std::vector<int>));
  static_assert(alignof(Secret<double, Label_A>) == alignof(double));
  CHECK(true);
}

TEST_CASE("capability predicates") {
  static_assert(is_isef_v<int>);
  static_assert(is_isef_v<std::string>);
  static_assert(is_isef_v<std::vector<std::pair<int, std::string>>>);
  static_assert(isef_fault_of<std::atomic<int>>() == isef_fault::interior_mut);
  static_assert(isef_fault_of<std::mutex>() == isef_fault::interior_mut);
  static_assert(isef_fault_of<std::vector<std::atomic<int>*>>() == isef_fault::interior_mut);
  static_assert(isef_fault_of<Noisy>() == isef_fault::custom_drop);
  static_assert(isef_fault_of<Deref>() == isef_fault::custom_deref);
  static_assert(isef_fault_of<std::unique_ptr<int>>() == isef_fault::custom_deref);
  static_assert(isef_fault_of<Plain>() == isef_fault::not_isef);
  static_assert(isef_fault_of<WithAtomic>() == isef_fault::not_isef);
  static_assert(is_immutable_v<const int*>);
  static_assert(!is_immutable_v<int*>);
  static_assert(is_immutable_v<Secret<int, Label_A>*>);
  static_assert(SecretValueSafe<std::vector<int>>);
  static_assert(!SecretValueSafe<std::atomic<int>>);
  static_assert(contains_secret_v<std::vector<Secret<int, Label_A>>>);
  static_assert(!contains_secret_v<std::vector<int>>);
  CHECK(true);
}

TEST_CASE("declassify returns what was wrapped") {
  std::mt19937 gen(42);
  std::uniform_int_distribution<int> d(-1000000, 1000000);
  for (int i = 0; i < 200; ++i) {
    int v = d(gen);
    auto s = secret_new<Label_AB>(unsafe, v);
    CHECK(s.declassify() == v);
    std::string text(static_cast<std::size_t>(i % 17), static_cast<char>('a' + i % 26));
    CHECK(secret_new<Label_A>(unsafe, text).declassify() == text);
  }
}

TEST_CASE("declassify references") {
  auto s = secret_new<Label_A>(unsafe, std::vector<int>{1, 2});
  s.declassify_ref_mut().push_back(3);
  CHECK(s.declassify_ref().size() == 3);
}

TEST_CASE("unwrap respects labels at run time too") {
  auto s = secret_new<Label_A>(unsafe, 5);
  CHECK(secret_unwrap<Label_AB>(unsafe, s) == 5);
  CHECK(*secret_unwrap_ref<Label_A>(unsafe, &s) == 5);
  *secret_unwrap_mut_ref<Label_A>(unsafe, &s) += 1;
  CHECK(s.declassify() == 6);
}

TEST_CASE("call_closure and panic containment") {
  auto r = call_closure<Label_A>([] { return secret_new<Label_A>(unsafe, 3); });
  CHECK(r.declassify() == 3);
  call_closure<Label_B>([] {});
  auto caught = catch_unwind([]() -> int { throw std::runtime_error("boom"); });
  CHECK(caught.panicked());
  auto fine = catch_unwind([] { return 4; });
  CHECK_FALSE(fine.panicked());
}

TEST_CASE("transmute round trip") {
  std::vector<int> original = {3, 1, 4};
  std::vector<Secret<int, Label_Empty>> wrapped;
  for (int v : original) wrapped.push_back(secret_new<Label_Empty>(unsafe, v));
  auto view = declassify_transmute(wrapped);
  REQUIRE(view.size() == original.size());
  CHECK(std::vector<int>(view.begin(), view.end()) == original);
  CHECK(static_cast<void*>(view.data()) == static_cast<void*>(wrapped.data()));

  auto sp = std::make_shared<Secret<std::string, Label_A>>(secret_new<Label_A>(unsafe, std::string("body")));
  auto plain = declassify_transmute(sp);
  CHECK(*plain == "body");
  CHECK(static_cast<void*>(plain.get()) == static_cast<void*>(sp.get()));
  CHECK(sp.use_count() == 2);

  std::array<Secret<int, Label_B>, 2> arr = {secret_new<Label_B>(unsafe, 1), secret_new<Label_B>(unsafe, 2)};
  auto& raw = declassify_transmute(arr);
  CHECK(raw[1] == 2);
}
