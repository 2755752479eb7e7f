#pragma once

#include <array>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace battleship {

inline constexpr int GRID_SIZE = 10;

template <class T>
using Grid = std::array<std::array<T, GRID_SIZE>, GRID_SIZE>;

enum class CellStatus : std::uint8_t { Unguessed, Hit, Miss };

enum class Ship : std::uint8_t { Carrier, Battleship, Cruiser, Submarine, Destroyer };

inline constexpr std::array<Ship, 5> kFleet = {Ship::Carrier, Ship::Battleship, Ship::Cruiser, Ship::Submarine,
                                               Ship::Destroyer};
inline constexpr int kFleetCells = 17;

constexpr int ship_length(Ship s) {
  constexpr int len[] = {5, 4, 3, 3, 2};
  return len[static_cast<int>(s)];
}

const char* ship_name(Ship s);

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline constexpr int kMaxPlacementAttempts = 1000;

class SetupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Guess {
  int row;
  int col;
};

struct Verdict {
  bool hit;
  bool fleet_sunk;
};

namespace detail {
template <class T>
struct Lane {
  std::mutex m;
  std::condition_variable cv;
  std::deque<T> q;
  bool closed = false;
};
struct Wire {
  Lane<Guess> guesses[2];    // indexed by receiving role
  Lane<Verdict> verdicts[2];
};
}  // namespace detail

enum class Role { A = 0, B = 1 };

inline Role other(Role r) { return r == Role::A ? Role::B : Role::A; }
inline char role_name(Role r) { return r == Role::A ? 'A' : 'B'; }

class Channel;

// One side of an in-process duplex channel. recv returns nullopt once the
// peer has closed and nothing is queued; send returns false after close.
class Port {
 public:
  bool send_guess(Guess g);
  bool send_verdict(Verdict v);
  std::optional<Guess> recv_guess();
  std::optional<Verdict> recv_verdict();
  void close();

 private:
  friend class Channel;
  Port(detail::Wire* w, Role me) : wire_(w), me_(me) {}
  detail::Wire* wire_;
  Role me_;
};

class Channel {
 public:
  Port port(Role r) { return Port(&wire_, r); }

 private:
  detail::Wire wire_;
};

// Where guesses come from. Scripted and interactive play share one code path.
class GuessSource {
 public:
  virtual ~GuessSource() = default;
  // Next raw input line for a player; nullopt when input is exhausted.
  virtual std::optional<std::string> next_line(Role who, const Grid<CellStatus>& my_guesses) = 0;
};

// Script lines are "a ROW COL" or "b ROW COL"; '#' starts a comment.
class ScriptSource : public GuessSource {
 public:
  explicit ScriptSource(const std::string& text);
  std::optional<std::string> next_line(Role who, const Grid<CellStatus>& my_guesses) override;

 private:
  std::mutex m_;
  std::deque<std::string> lines_[2];
};

class TerminalSource : public GuessSource {
 public:
  TerminalSource(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<std::string> next_line(Role who, const Grid<CellStatus>& my_guesses) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

// A seeded script: each player fires at every cell once in a shuffled
// order, with an out-of-bounds guess mixed in now and then.
std::string random_script(std::uint64_t seed);

std::string render(const Grid<CellStatus>& g);

// Parses "ROW COL". nullopt for malformed or out-of-bounds input.
std::optional<Guess> parse_guess(const std::string& line);

struct Transcript {
  std::vector<std::string> lines;
  std::string text() const;
  bool operator==(const Transcript&) const = default;
};

// Per-player log, merged by turn after the game.
class PlayerLog {
 public:
  PlayerLog(Role me, std::ostream* echo, std::mutex* echo_mu) : me_(me), echo_(echo), echo_mu_(echo_mu) {}
  void add(int turn, std::string line);

 private:
  friend Transcript merge_logs(const PlayerLog& a, const PlayerLog& b);
  struct Entry {
    int turn;
    int order;
    std::string line;
  };
  Role me_;
  std::ostream* echo_;
  std::mutex* echo_mu_;
  std::vector<Entry> entries_;
};

Transcript merge_logs(const PlayerLog& a, const PlayerLog& b);

// Decides whether the opponent's guess hit one of this player's ships.
using HitOracle = std::function<bool(Guess)>;

// Runs one player's side of the protocol until the game ends or the
// channel closes. A fires first.
void run_player(Role me, Port port, GuessSource& input, const HitOracle& decide_hit, Grid<CellStatus>& guesses,
                PlayerLog& log);

struct SessionOptions {
  std::uint64_t seed_a = 1;
  std::uint64_t seed_b = 2;
  std::ostream* echo = nullptr;  // live transcript for interactive play
};

// Header line, both players' logs merged by turn.
Transcript finish_session(const SessionOptions& opts, const PlayerLog& a, const PlayerLog& b);

}  // namespace battleship
