#include "demos/battleship_plain.hpp"

#include <mutex>
#include <thread>

namespace battleship::plain {

std::uint64_t next_random(Rng* rng) {
  ++rng->counter;
  return splitmix64(rng->seed ^ splitmix64(rng->counter));
}

Placement random_maybe_illegal_placement(Ship ship, Rng* rng) {
  const bool horizontal = next_random(rng) % 2 == 0;
  const std::uint64_t span = GRID_SIZE - ship_length(ship) + 1;
  const std::uint64_t a = next_random(rng);
  const std::uint64_t b = next_random(rng);
  if (horizontal) return {ship, static_cast<int>(a % GRID_SIZE), static_cast<int>(b % span), true};
  return {ship, static_cast<int>(a % span), static_cast<int>(b % GRID_SIZE), false};
}

bool legal_placement(const Grid<bool>& grid, const Placement& p) {
  for (int i = 0; i < ship_length(p.ship); ++i) {
    const int r = p.horizontal ? p.row : p.row + i;
    const int c = p.horizontal ? p.col + i : p.col;
    if (r < 0 || r >= GRID_SIZE || c < 0 || c >= GRID_SIZE || grid[r][c]) return false;
  }
  return true;
}

std::optional<Placement> random_placement(const Grid<bool>& grid, Ship ship, Rng* rng) {
  for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    Placement p = random_maybe_illegal_placement(ship, rng);
    if (legal_placement(grid, p)) return p;
  }
  return std::nullopt;
}

void place_ship(Grid<bool>& grid, const Placement& p) {
  for (int i = 0; i < ship_length(p.ship); ++i) {
    if (p.horizontal)
      grid[p.row][p.col + i] = true;
    else
      grid[p.row + i][p.col] = true;
  }
}

bool is_occupied(const Grid<bool>& grid, int row, int col) { return grid[row][col]; }

Grid<bool> place_fleet(std::uint64_t seed) {
  Grid<bool> grid{};
  Rng rng{seed, 0};
  for (Ship ship : kFleet) {
    auto p = random_placement(grid, ship, &rng);
    if (!p) throw SetupError(std::string("no room for the ") + ship_name(ship));
    place_ship(grid, *p);
  }
  return grid;
}

Transcript session(const SessionOptions& opts, GuessSource& input) {
  Channel chan;
  std::mutex echo_mu;
  PlayerLog log_a(Role::A, opts.echo, &echo_mu);
  PlayerLog log_b(Role::B, opts.echo, &echo_mu);
  const Grid<bool> ships_a = place_fleet(opts.seed_a);
  const Grid<bool> ships_b = place_fleet(opts.seed_b);
  Grid<CellStatus> guesses_a{}, guesses_b{};
  auto play = [&](Role me, const Grid<bool>& ships, Grid<CellStatus>& guesses, PlayerLog& log) {
    run_player(me, chan.port(me), input, [&](Guess g) { return is_occupied(ships, g.row, g.col); }, guesses, log);
  };
  std::thread ta(play, Role::A, std::cref(ships_a), std::ref(guesses_a), std::ref(log_a));
  std::thread tb(play, Role::B, std::cref(ships_b), std::ref(guesses_b), std::ref(log_b));
  ta.join();
  tb.join();
  return finish_session(opts, log_a, log_b);
}

}  // namespace battleship::plain
