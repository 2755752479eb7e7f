#include <doctest.h>

#include <filesystem>

#include "cocoon/conformance.hpp"

using namespace cocoon::conformance;

TEST_CASE("expectation headers") {
  auto dir = std::filesystem::temp_directory_path() / "cocoon-unit-conf";
  std::filesystem::create_directories(dir);
  write_file(dir / "neg.cocoon.cpp", "// expect: reject E-READ-UP\n// policies: a,b,c\n// a note\nint x;\n");
  write_file(dir / "pos.cocoon.cpp", "// expect: accept\n// args: 3 4\nint main() {}\n");
  write_file(dir / "pos.expected", "hello\n");
  write_file(dir / "bad.cocoon.cpp", "int main() {}\n");

  auto neg = parse_expectation(dir / "neg.cocoon.cpp");
  CHECK(neg.name == "neg");
  CHECK_FALSE(neg.accept);
  CHECK(neg.category == "E-READ-UP");
  CHECK(neg.policies == "a,b,c");
  CHECK(neg.expected_verdict() == "reject E-READ-UP");

  auto pos = parse_expectation(dir / "pos.cocoon.cpp");
  CHECK(pos.accept);
  CHECK(pos.args == "3 4");
  REQUIRE(pos.expected_output.has_value());
  CHECK(*pos.expected_output == "hello\n");

  CHECK_THROWS_AS(parse_expectation(dir / "bad.cocoon.cpp"), HarnessError);
  CHECK_THROWS_AS(load_corpus(dir), HarnessError);
  CHECK(load_corpus(dir, "p*").size() == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("first category") {
  CHECK(first_category("a.cpp:1: note: E-FOO\nb.cpp:2:3: error: static assertion failed: E-READ-UP: x\n") ==
        "E-READ-UP");
  CHECK(first_category("a.cpp:1:1: error: expected ';'\n") == "E-COMPILE");
}

TEST_CASE("shipped corpus loads") {
  auto entries = load_corpus(COCOON_SOURCE_DIR "/tests/corpus");
  CHECK(entries.size() >= 20);
  for (const auto& e : entries)
    if (e.accept) CHECK(e.expected_output.has_value());
}

TEST_CASE("report summary") {
  Report r;
  r.outcomes.push_back({"a", "accept", "accept", true, false, ""});
  r.outcomes.push_back({"b", "reject E-COMPILE", "reject E-READ-UP", false, false, "x"});
  CHECK_FALSE(r.all_pass());
  CHECK(r.summary() == "a\taccept\taccept\tpass\nb\treject E-COMPILE\treject E-READ-UP\tfail\n");
  CHECK(r.text().find("1/2") != std::string::npos);
}
