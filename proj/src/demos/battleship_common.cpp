#include "demos/battleship.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace battleship {

const char* ship_name(Ship s) {
  switch (s) {
    case Ship::Carrier:
      return "carrier";
    case Ship::Battleship:
      return "battleship";
    case Ship::Cruiser:
      return "cruiser";
    case Ship::Submarine:
      return "submarine";
    case Ship::Destroyer:
      return "destroyer";
  }
  return "?";
}

namespace {

template <class T>
bool push(detail::Lane<T>& lane, const T& v) {
  std::lock_guard lk(lane.m);
  if (lane.closed) return false;
  lane.q.push_back(v);
  lane.cv.notify_one();
  return true;
}

template <class T>
std::optional<T> pop(detail::Lane<T>& lane) {
  std::unique_lock lk(lane.m);
  lane.cv.wait(lk, [&] { return lane.closed || !lane.q.empty(); });
  if (lane.q.empty()) return std::nullopt;
  T v = lane.q.front();
  lane.q.pop_front();
  return v;
}

template <class T>
void shut(detail::Lane<T>& lane) {
  std::lock_guard lk(lane.m);
  lane.closed = true;
  lane.cv.notify_all();
}

int idx(Role r) { return static_cast<int>(r); }

}  // namespace

bool Port::send_guess(Guess g) { return push(wire_->guesses[idx(other(me_))], g); }
bool Port::send_verdict(Verdict v) { return push(wire_->verdicts[idx(other(me_))], v); }
std::optional<Guess> Port::recv_guess() { return pop(wire_->guesses[idx(me_)]); }
std::optional<Verdict> Port::recv_verdict() { return pop(wire_->verdicts[idx(me_)]); }

void Port::close() {
  for (auto& l : wire_->guesses) shut(l);
  for (auto& l : wire_->verdicts) shut(l);
}

ScriptSource::ScriptSource(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    char who = static_cast<char>(std::tolower(static_cast<unsigned char>(line[b])));
    if (who != 'a' && who != 'b') continue;
    auto rest = line.find_first_not_of(" \t", b + 1);
    auto end = line.find_last_not_of(" \t\r");
    lines_[who == 'a' ? 0 : 1].push_back(rest == std::string::npos ? "" : line.substr(rest, end - rest + 1));
  }
}

std::optional<std::string> ScriptSource::next_line(Role who, const Grid<CellStatus>&) {
  std::lock_guard lk(m_);
  auto& q = lines_[idx(who)];
  if (q.empty()) return std::nullopt;
  std::string s = q.front();
  q.pop_front();
  return s;
}

std::optional<std::string> TerminalSource::next_line(Role who, const Grid<CellStatus>& my_guesses) {
  out_ << render(my_guesses) << "Player " << role_name(who) << ", enter guess (row col): " << std::flush;
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  return line;
}

std::string random_script(std::uint64_t seed) {
  std::ostringstream s;
  for (char who : {'a', 'b'}) {
    std::array<int, GRID_SIZE * GRID_SIZE> cells;
    for (int i = 0; i < GRID_SIZE * GRID_SIZE; ++i) cells[i] = i;
    std::uint64_t ctr = splitmix64(seed ^ static_cast<std::uint64_t>(who));
    for (int i = GRID_SIZE * GRID_SIZE - 1; i > 0; --i) {
      ctr = splitmix64(ctr);
      std::swap(cells[i], cells[ctr % static_cast<std::uint64_t>(i + 1)]);
    }
    for (int i = 0; i < GRID_SIZE * GRID_SIZE; ++i) {
      if (i % 37 == 5) s << who << ' ' << GRID_SIZE << ' ' << cells[i] % GRID_SIZE << '\n';
      s << who << ' ' << cells[i] / GRID_SIZE << ' ' << cells[i] % GRID_SIZE << '\n';
    }
  }
  return s.str();
}

std::string render(const Grid<CellStatus>& g) {
  std::ostringstream s;
  s << "   ";
  for (int c = 0; c < GRID_SIZE; ++c) s << c << ' ';
  s << '\n';
  for (int r = 0; r < GRID_SIZE; ++r) {
    s << (r < 10 ? " " : "") << r << ' ';
    for (int c = 0; c < GRID_SIZE; ++c) {
      char ch = g[r][c] == CellStatus::Hit ? 'X' : g[r][c] == CellStatus::Miss ? 'o' : '.';
      s << ch << ' ';
    }
    s << '\n';
  }
  return s.str();
}

std::optional<Guess> parse_guess(const std::string& line) {
  std::istringstream in(line);
  long r, c;
  std::string rest;
  if (!(in >> r >> c) || (in >> rest)) return std::nullopt;
  if (r < 0 || r >= GRID_SIZE || c < 0 || c >= GRID_SIZE) return std::nullopt;
  return Guess{static_cast<int>(r), static_cast<int>(c)};
}

std::string Transcript::text() const {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

void PlayerLog::add(int turn, std::string line) {
  if (echo_) {
    std::lock_guard lk(*echo_mu_);
    *echo_ << line << '\n' << std::flush;
  }
  entries_.push_back({turn, static_cast<int>(entries_.size()), std::move(line)});
}

Transcript merge_logs(const PlayerLog& a, const PlayerLog& b) {
  // The shooter of a turn logs first; the other side only logs disconnects.
  struct Key {
    int turn;
    int rank;
    int order;
    const std::string* line;
  };
  std::vector<Key> all;
  for (const PlayerLog* log : {&a, &b}) {
    for (const auto& e : log->entries_) {
      Role shooter = e.turn % 2 == 0 ? Role::A : Role::B;
      all.push_back({e.turn, log->me_ == shooter ? 0 : 1, e.order, &e.line});
    }
  }
  std::sort(all.begin(), all.end(), [](const Key& x, const Key& y) {
    if (x.turn != y.turn) return x.turn < y.turn;
    if (x.rank != y.rank) return x.rank < y.rank;
    return x.order < y.order;
  });
  Transcript t;
  for (const auto& k : all) t.lines.push_back(*k.line);
  return t;
}

Transcript finish_session(const SessionOptions& opts, const PlayerLog& a, const PlayerLog& b) {
  Transcript t = merge_logs(a, b);
  t.lines.insert(t.lines.begin(),
                 "Battleship: seed A " + std::to_string(opts.seed_a) + ", seed B " + std::to_string(opts.seed_b));
  return t;
}

void run_player(Role me, Port port, GuessSource& input, const HitOracle& decide_hit, Grid<CellStatus>& guesses,
                PlayerLog& log) {
  const std::string name = std::string("Player ") + role_name(me);
  Grid<bool> hit_on_me{};
  int hits_taken = 0;
  for (int turn = 0;; ++turn) {
    const bool shooting = (turn % 2 == 0) == (me == Role::A);
    if (shooting) {
      std::optional<Guess> g;
      while (!g) {
        auto line = input.next_line(me, guesses);
        if (!line) {
          log.add(turn, name + ": no more guesses, leaving the game");
          port.close();
          return;
        }
        g = parse_guess(*line);
        if (!g) log.add(turn, name + ": '" + *line + "' is not a cell on the board, guess again");
      }
      if (!port.send_guess(*g)) {
        log.add(turn, name + ": opponent left the game");
        return;
      }
      auto v = port.recv_verdict();
      if (!v) {
        log.add(turn, name + ": opponent left the game");
        return;
      }
      guesses[g->row][g->col] = v->hit ? CellStatus::Hit : CellStatus::Miss;
      log.add(turn, name + " fires at (" + std::to_string(g->row) + "," + std::to_string(g->col) + "): " +
                        (v->hit ? "hit" : "miss"));
      if (v->fleet_sunk) {
        log.add(turn, name + " sank the opposing fleet and wins");
        port.close();
        return;
      }
    } else {
      auto g = port.recv_guess();
      if (!g) {
        log.add(turn, name + ": opponent left the game");
        return;
      }
      const bool hit = decide_hit(*g);
      if (hit && !hit_on_me[g->row][g->col]) {
        hit_on_me[g->row][g->col] = true;
        ++hits_taken;
      }
      const bool sunk = hits_taken == kFleetCells;
      if (!port.send_verdict(Verdict{hit, sunk})) {
        log.add(turn, name + ": opponent left the game");
        return;
      }
      if (sunk) return;
    }
  }
}

}  // namespace battleship
