#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "cocoon/lattice.hpp"

using namespace cocoon::lattice;

namespace {

// Brute-force subset pairs over n policies.
std::size_t subset_pairs(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t hi = 0; hi < (1u << n); ++hi)
    for (std::size_t lo = 0; lo < (1u << n); ++lo)
      if ((hi | lo) == hi) ++count;
  return count;
}

}  // namespace

TEST_CASE("two policies give four labels") {
  auto fam = generate_lattice({"b", "a"});
  REQUIRE(fam.labels().size() == 4);
  auto ab = fam.label_of({"a", "b"});
  auto empty = fam.label_of({});
  for (const auto& l : fam.labels()) {
    CHECK(at_least_as_secret(ab, l));
    CHECK(at_least_as_secret(l, empty));
  }
  CHECK_FALSE(at_least_as_secret(empty, ab));
  CHECK(fam.canonical_name(ab) == "Label_AB");
  CHECK(fam.canonical_name(empty) == "Label_Empty");
  CHECK(fam.base_policies() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("empty lattice") {
  auto fam = generate_lattice({});
  REQUIRE(fam.labels().size() == 1);
  REQUIRE(fam.order_relation().size() == 1);
  CHECK(fam.order_relation()[0].first == fam.order_relation()[0].second);
}

TEST_CASE("order relation matches subset enumeration") {
  std::vector<std::string> names = {"a", "b", "c", "d", "e"};
  for (std::size_t n = 0; n <= names.size(); ++n) {
    auto fam = generate_lattice(std::vector<std::string>(names.begin(), names.begin() + n));
    CHECK(fam.labels().size() == (1u << n));
    CHECK(fam.order_relation().size() == subset_pairs(n));
  }
  CHECK(generate_lattice({"a", "b", "c"}).order_relation().size() == 27);
}

TEST_CASE("order agrees with policy sets") {
  auto fam = generate_lattice({"a", "b", "c"});
  for (const auto& x : fam.labels())
    for (const auto& y : fam.labels()) {
      auto px = fam.policies_of(x), py = fam.policies_of(y);
      bool superset = std::includes(px.begin(), px.end(), py.begin(), py.end());
      CHECK(at_least_as_secret(x, y) == superset);
      auto in_rel = std::find(fam.order_relation().begin(), fam.order_relation().end(), std::make_pair(x, y)) !=
                    fam.order_relation().end();
      CHECK(in_rel == superset);
    }
}

TEST_CASE("join is the union") {
  auto fam = generate_lattice({"a", "b", "c"});
  CHECK(join(fam.label_of({"a"}), fam.label_of({"c"})) == fam.label_of({"a", "c"}));
  CHECK(join(fam.label_of({}), fam.label_of({"b"})) == fam.label_of({"b"}));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(generate_lattice({"a", "a"}), LatticeError);
  CHECK_THROWS_AS(generate_lattice({"a", "A"}), LatticeError);
  CHECK_THROWS_AS(generate_lattice({"1x"}), LatticeError);
  CHECK_THROWS_AS(generate_lattice({"a", "b", "c", "d", "e", "f"}), LatticeError);
  CHECK_NOTHROW(generate_lattice({"a", "b", "c", "d", "e", "f"}, 6));
  auto fam = generate_lattice({"a"});
  CHECK_THROWS_AS(fam.label_of({"z"}), LatticeError);
  auto other = generate_lattice({"x"});
  CHECK_THROWS_AS(at_least_as_secret(fam.label_of({"a"}), other.label_of({"x"})), LatticeError);
}

TEST_CASE("too many policies explains itself") {
  try {
    generate_lattice({"a", "b", "c", "d", "e", "f"});
    FAIL("expected a rejection");
  } catch (const LatticeError& e) {
    CHECK(std::string(e.what()).find("maximum 5") != std::string::npos);
  }
}

TEST_CASE("multi-letter policy names are separated") {
  auto fam = generate_lattice({"alice", "bob"});
  CHECK(fam.canonical_name(fam.label_of({"alice", "bob"})) == "Label_ALICE_BOB");
}

TEST_CASE("emitted header is deterministic") {
  auto h1 = emit_header(generate_lattice({"a", "b"}));
  auto h2 = emit_header(generate_lattice({"b", "a"}));
  CHECK(h1 == h2);
  CHECK(h1.find("struct Label_AB") != std::string::npos);
  CHECK(h1.find("more_secret_than<::lat::Label_AB, ::lat::Label_A>") != std::string::npos);
  CHECK(h1.find("more_secret_than<::lat::Label_A, ::lat::Label_B>") == std::string::npos);
}

TEST_CASE("policy list splitting") {
  CHECK(split_policy_list("a, b ,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_policy_list("").empty());
  CHECK_THROWS_AS(split_policy_list("a,,b"), LatticeError);
}
