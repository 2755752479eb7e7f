#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "demos/battleship.hpp"
#include "demos/battleship_plain.hpp"
#include "demos/battleship_secure.hpp"
#include "demos/bench.hpp"
#include "demos/calendar.hpp"

using namespace battleship;

namespace {

int cells(const Grid<bool>& g) {
  int n = 0;
  for (const auto& row : g)
    for (bool b : row) n += b;
  return n;
}

}  // namespace

TEST_CASE("plain placement properties") {
  Grid<bool> empty{};
  for (int r = 0; r < GRID_SIZE; ++r)
    for (int c = 0; c < GRID_SIZE; ++c) CHECK_FALSE(plain::is_occupied(empty, r, c));
  plain::Rng rng{7, 0};
  for (int i = 0; i < 200; ++i) {
    auto p = plain::random_maybe_illegal_placement(Ship::Carrier, &rng);
    CHECK(plain::legal_placement(empty, p));
  }
  Grid<bool> g{};
  plain::Placement p{Ship::Cruiser, 2, 3, true};
  plain::place_ship(g, p);
  CHECK(plain::is_occupied(g, 2, 3));
  CHECK(plain::is_occupied(g, 2, 5));
  CHECK_FALSE(plain::is_occupied(g, 2, 6));
  CHECK_FALSE(plain::legal_placement(g, plain::Placement{Ship::Destroyer, 1, 4, false}));
  CHECK_FALSE(plain::legal_placement(g, plain::Placement{Ship::Carrier, 0, 7, true}));
}

TEST_CASE("every fleet covers 17 cells in both versions") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto board = plain::place_fleet(seed);
    CHECK(cells(board) == kFleetCells);
    auto player = secure::new_player<lat::Label_A>(seed);
    // Test-only peek at the labeled board.
    const auto& hidden = player.ship_positions.declassify_ref();
    CHECK(hidden == board);
  }
}

TEST_CASE("secure helpers agree with plain ones") {
  secure::Rng srng{11, 0};
  plain::Rng prng{11, 0};
  for (int i = 0; i < 50; ++i)
    CHECK(secure::next_random(::cocoon::unsafe, &srng).unwrap(::cocoon::unsafe) == plain::next_random(&prng));
  Grid<bool> g{};
  CHECK_FALSE(secure::is_occupied(::cocoon::unsafe, &g, 0, 0).unwrap(::cocoon::unsafe));
  secure::place_ship(::cocoon::unsafe, &g, secure::Placement{Ship::Destroyer, 4, 4, false}).unwrap(::cocoon::unsafe);
  CHECK(secure::is_occupied(::cocoon::unsafe, &g, 5, 4).unwrap(::cocoon::unsafe));
}

TEST_CASE("guess parsing") {
  CHECK(parse_guess("3 4").has_value());
  CHECK_FALSE(parse_guess("10 0").has_value());
  CHECK_FALSE(parse_guess("-1 0").has_value());
  CHECK_FALSE(parse_guess("1").has_value());
  CHECK_FALSE(parse_guess("1 2 3").has_value());
}

TEST_CASE("channel close wakes the peer") {
  Channel ch;
  auto a = ch.port(Role::A);
  auto b = ch.port(Role::B);
  CHECK(a.send_guess({1, 2}));
  auto g = b.recv_guess();
  REQUIRE(g.has_value());
  CHECK(g->row == 1);
  std::optional<Verdict> got = Verdict{};
  std::thread t([&] { got = a.recv_verdict(); });
  b.close();
  t.join();
  CHECK_FALSE(got.has_value());
  CHECK_FALSE(a.send_guess({0, 0}));
}

TEST_CASE("random scripts are deterministic and complete") {
  CHECK(random_script(5) == random_script(5));
  CHECK(random_script(5) != random_script(6));
  std::istringstream in(random_script(3));
  std::set<std::string> a_cells;
  std::string who, r, c;
  while (in >> who >> r >> c)
    if (who == "a" && r != "10") a_cells.insert(r + " " + c);
  CHECK(a_cells.size() == GRID_SIZE * GRID_SIZE);
}

TEST_CASE("a scripted game ends with a winner") {
  ScriptSource src(random_script(9));
  auto t = secure::session(SessionOptions{}, src);
  REQUIRE_FALSE(t.lines.empty());
  CHECK(t.lines.front() == "Battleship: seed A 1, seed B 2");
  CHECK(t.lines.back().find("wins") != std::string::npos);
}

TEST_CASE("calendar trivial cases") {
  using calendar::Week;
  Week none{};
  Week all;
  all.fill(true);
  auto A = [](const Week& w) { return calendar::make_calendar<lat::Label_A>(w); };
  auto B = [](const Week& w) { return calendar::make_calendar<lat::Label_B>(w); };
  CHECK(calendar::calendar_overlap(A(none), B(all)) == 0);
  CHECK(calendar::calendar_overlap(A(all), B(all)) == 7);
  Week one{};
  one[3] = true;
  CHECK(calendar::calendar_overlap(A(one), B(all)) == 1);
  CHECK(calendar::calendar_overlap(A(one), B(none)) == 0);
}

TEST_CASE("bench statistics") {
  auto s = bench::summarize({1.0, 1.0, 1.0});
  CHECK(s.mean == doctest::Approx(1.0));
  CHECK(s.ci95 == doctest::Approx(0.0));
  // Two samples: t(0.975, 1) = 12.706, sd = 0.7071, so half-width 6.353.
  auto t = bench::summarize({1.0, 2.0});
  CHECK(t.ci95 == doctest::Approx(6.353).epsilon(0.001));
  CHECK(t.noisy());
  CHECK(bench::Stats{3, 1.0, 0.1}.overlaps(bench::Stats{3, 1.15, 0.1}));
  CHECK_FALSE(bench::Stats{3, 1.0, 0.1}.overlaps(bench::Stats{3, 1.3, 0.1}));
  CHECK(bench::parse_mode("secret") == bench::Mode::secret);
  CHECK_THROWS(bench::parse_mode("fast"));
}

TEST_CASE("bench kernels agree across modes") {
  for (const auto& k : bench::kernels()) {
    double p = 0, s = 0;
    bench::time_once(k, bench::Mode::plain, 1000, &p);
    bench::time_once(k, bench::Mode::secret, 1000, &s);
    CHECK(p == s);
  }
}

TEST_CASE("bench report merge and round trip") {
  auto path = std::filesystem::temp_directory_path() / "cocoon-unit-report.md";
  std::vector<bench::ReportRow> first = {{"nbody", "plain", 1.5, 0.01, 0.2, 100},
                                         {"nbody", "secret", 1.6, 0.02, 0.3, 120}};
  std::vector<bench::ReportRow> second = {{"nbody", "secret", 1.4, 0.03, 0.25, 110},
                                          {"sieve", "plain", 0.5, 0.0, 0.1, 90}};
  auto merged = bench::merge_rows(first, second);
  REQUIRE(merged.size() == 3);
  {
    std::ofstream out(path);
    out << bench::format_report(merged);
  }
  auto back = bench::read_report(path);
  REQUIRE(back.size() == 3);
  CHECK(back[1].kernel == "nbody");
  CHECK(back[1].mode == "secret");
  CHECK(back[1].mean_s == doctest::Approx(1.4));
  CHECK(back[1].size_bytes == 110);
  CHECK(bench::format_report(merged).find("nbody: 1.25x") != std::string::npos);
  std::filesystem::remove(path);
  CHECK(bench::read_report(path).empty());
}
