#include <doctest.h>

#include <stdexcept>

#include "cocoon/allowlist.hpp"

using cocoon::Allowlist;

TEST_CASE("builtin list") {
  const auto& a = Allowlist::builtin();
  CHECK(a.is_allowlisted("::std::sqrt"));
  CHECK(a.is_allowlisted("::std::max", 2));
  CHECK_FALSE(a.is_allowlisted("::std::max", 3));
  CHECK_FALSE(a.is_allowlisted("max"));
  CHECK_FALSE(a.is_allowlisted("std::sqrt"));
  CHECK_FALSE(a.is_allowlisted("::std::printf"));
}

TEST_CASE("parsing") {
  auto a = Allowlist::parse("# comment\n::f, 1, one\n\n::g, -1, any  # trailing\n");
  REQUIRE(a.entries().size() == 2);
  CHECK(a.is_allowlisted("::f", 1));
  CHECK_FALSE(a.is_allowlisted("::f", 2));
  CHECK(a.is_allowlisted("::g", 7));
  CHECK_THROWS_AS(Allowlist::parse("::f\n"), std::runtime_error);
  CHECK_THROWS_AS(Allowlist::parse("::f, x, bad arity\n"), std::runtime_error);
}

TEST_CASE("builtin list matches the data file") {
  auto file = Allowlist::load(COCOON_SOURCE_DIR "/data/allowlist.txt");
  const auto& built = Allowlist::builtin();
  REQUIRE(file.entries().size() == built.entries().size());
  for (std::size_t i = 0; i < file.entries().size(); ++i) {
    CHECK(file.entries()[i].name == built.entries()[i].name);
    CHECK(file.entries()[i].arity == built.entries()[i].arity);
  }
}

TEST_CASE("names must be fully qualified") {
  CHECK_THROWS_AS(Allowlist::parse("std::sqrt, 1, x\n"), std::runtime_error);
}
