#pragma once

#include <cstdint>
#include <optional>

#include "demos/battleship.hpp"

// Unlabeled twin of the secure Battleship: same rules and protocol, ship
// positions held in a plain grid.
namespace battleship::plain {

struct Rng {
  std::uint64_t seed;
  std::uint64_t counter;
};

struct Placement {
  Ship ship;
  int row;
  int col;
  bool horizontal;
};

std::uint64_t next_random(Rng* rng);
Placement random_maybe_illegal_placement(Ship ship, Rng* rng);
bool legal_placement(const Grid<bool>& grid, const Placement& p);
std::optional<Placement> random_placement(const Grid<bool>& grid, Ship ship, Rng* rng);
void place_ship(Grid<bool>& grid, const Placement& p);
bool is_occupied(const Grid<bool>& grid, int row, int col);

// Throws SetupError when a ship cannot be placed.
Grid<bool> place_fleet(std::uint64_t seed);

Transcript session(const SessionOptions& opts, GuessSource& input);

}  // namespace battleship::plain
