#pragma once

#include <cocoon/cocoon.hpp>

#include <cstdint>
#include <optional>

#include "cocoon_labels.hpp"
#include "demos/battleship.hpp"

namespace battleship::secure {

template <class L>
struct [[cocoon::derive_isef]] Player {
  ::cocoon::Secret<Grid<bool>, L> ship_positions;
  Grid<CellStatus> guesses;
};

struct [[cocoon::derive_isef]] Rng {
  std::uint64_t seed;
  std::uint64_t counter;
};

struct [[cocoon::derive_isef]] Placement {
  Ship ship;
  int row;
  int col;
  bool horizontal;
};

[[cocoon::side_effect_free]] inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

[[cocoon::side_effect_free]] inline std::uint64_t next_random(Rng* rng) {
  rng->counter += 1;
  return mix64(rng->seed ^ mix64(rng->counter));
}

[[cocoon::side_effect_free]] inline int length_of(Ship ship) {
  switch (ship) {
    case Ship::Carrier:
      return 5;
    case Ship::Battleship:
      return 4;
    case Ship::Cruiser:
      return 3;
    case Ship::Submarine:
      return 3;
    case Ship::Destroyer:
      return 2;
  }
  return 0;
}

// In bounds, but may overlap ships already placed.
[[cocoon::side_effect_free]] inline Placement random_maybe_illegal_placement(Ship ship, Rng* rng) {
  const bool horizontal = next_random(rng) % 2 == 0;
  const std::uint64_t span = GRID_SIZE - length_of(ship) + 1;
  int row = 0;
  int col = 0;
  if (horizontal) {
    row = static_cast<int>(next_random(rng) % GRID_SIZE);
    col = static_cast<int>(next_random(rng) % span);
  } else {
    row = static_cast<int>(next_random(rng) % span);
    col = static_cast<int>(next_random(rng) % GRID_SIZE);
  }
  return Placement{ship, row, col, horizontal};
}

[[cocoon::side_effect_free]] inline bool legal_placement(const Grid<bool>* grid, Placement p) {
  for (int i = 0; i < length_of(p.ship); ++i) {
    const int r = p.horizontal ? p.row : p.row + i;
    const int c = p.horizontal ? p.col + i : p.col;
    if (r < 0 || r >= GRID_SIZE || c < 0 || c >= GRID_SIZE) {
      return false;
    }
    if ((*grid)[r][c]) {
      return false;
    }
  }
  return true;
}

// Rejection sampling with a retry budget; nullopt when the grid has no room.
[[cocoon::side_effect_free]] inline std::optional<Placement> random_placement(const Grid<bool>* grid, Ship ship,
                                                                              Rng* rng) {
  for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    Placement p = random_maybe_illegal_placement(ship, rng);
    if (legal_placement(grid, p)) {
      return p;
    }
  }
  return ::std::nullopt;
}

[[cocoon::side_effect_free]] inline void place_ship(Grid<bool>* grid, Placement p) {
  for (int i = 0; i < length_of(p.ship); ++i) {
    if (p.horizontal) {
      (*grid)[p.row][p.col + i] = true;
    } else {
      (*grid)[p.row + i][p.col] = true;
    }
  }
}

[[cocoon::side_effect_free]] inline bool is_occupied(const Grid<bool>* grid, int row, int col) {
  return (*grid)[row][col];
}

// A placement failure panics inside the block; containment then leaves an
// empty board, since reporting it would reveal something about the layout.
template <class L>
Player<L> new_player(std::uint64_t seed) {
  auto ship_positions = secret_block(L) {
    Grid<bool> grid = {};
    Rng rng = Rng{seed, 0};
    for (Ship ship : kFleet) {
      Placement p = ::cocoon::lib::option_unwrap(random_placement(&grid, ship, &rng));
      place_ship(&grid, p);
    }
    return wrap_secret(grid);
  };
  return Player<L>{std::move(ship_positions), Grid<CellStatus>{}};
}

Transcript session(const SessionOptions& opts, GuessSource& input);

}  // namespace battleship::secure
