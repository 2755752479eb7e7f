#include "demos/calendar.hpp"

#include <random>

namespace calendar {

Week random_week(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(0.5);
  Week w{};
  for (bool& d : w) d = coin(gen);
  return w;
}

int calendar_overlap(const Calendar<lat::Label_A>& alice_cal, const Calendar<lat::Label_B>& bob_cal) {
  auto count = secret_block(lat::Label_AB) { return wrap_secret(0); };
  for (const auto& [day, available] : alice_cal) {
    secret_block(lat::Label_AB) {
      if (unwrap_secret(available) &&
          *unwrap_secret_ref(::cocoon::lib::option_unwrap(::cocoon::lib::map_get(&bob_cal, &day)))) {
        *unwrap_secret_mut_ref(&count) += 1;
      }
    };
  }
  return count.declassify();
}

}  // namespace calendar
