#include "demos/battleship_secure.hpp"

#include <mutex>
#include <thread>

namespace battleship::secure {

namespace {

void game_loop_a(Player<lat::Label_A> player, Port port, GuessSource& input, PlayerLog& log) {
  auto decide = [&](Guess guess) {
    const int row = guess.row;
    const int col = guess.col;
    const bool is_hit = secret_block(lat::Label_A) {
      return wrap_secret(is_occupied(unwrap_secret_ref(&player.ship_positions), row, col));
    }.declassify();
    return is_hit;
  };
  run_player(Role::A, port, input, decide, player.guesses, log);
}

void game_loop_b(Player<lat::Label_B> player, Port port, GuessSource& input, PlayerLog& log) {
  auto decide = [&](Guess guess) {
    const int row = guess.row;
    const int col = guess.col;
    const bool is_hit = secret_block(lat::Label_B) {
      return wrap_secret(is_occupied(unwrap_secret_ref(&player.ship_positions), row, col));
    }.declassify();
    return is_hit;
  };
  run_player(Role::B, port, input, decide, player.guesses, log);
}

}  // namespace

Transcript session(const SessionOptions& opts, GuessSource& input) {
  Channel chan;
  std::mutex echo_mu;
  PlayerLog log_a(Role::A, opts.echo, &echo_mu);
  PlayerLog log_b(Role::B, opts.echo, &echo_mu);
  auto a = new_player<lat::Label_A>(opts.seed_a);
  auto b = new_player<lat::Label_B>(opts.seed_b);
  std::thread ta([&] { game_loop_a(std::move(a), chan.port(Role::A), input, log_a); });
  std::thread tb([&] { game_loop_b(std::move(b), chan.port(Role::B), input, log_b); });
  ta.join();
  tb.join();
  return finish_session(opts, log_a, log_b);
}

}  // namespace battleship::secure
