#pragma once

#include <cocoon/cocoon.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "cocoon_labels.hpp"

namespace calendar {

inline constexpr std::array<const char*, 7> kDays = {"monday", "tuesday",  "wednesday", "thursday",
                                                     "friday", "saturday", "sunday"};

using Week = std::array<bool, 7>;

// Day name to availability; keys are public, values carry the owner's label.
template <class L>
using Calendar = std::map<std::string, ::cocoon::Secret<bool, L>>;

// Owner-side construction from plain availability flags.
template <class L>
Calendar<L> make_calendar(const Week& week) {
  Calendar<L> cal;
  for (std::size_t i = 0; i < kDays.size(); ++i)
    cal.emplace(kDays[i], ::cocoon::secret_new<L>(::cocoon::unsafe, week[i]));
  return cal;
}

Week random_week(std::uint64_t seed);

// Days both are available. Computed at {a,b}; the count is the only value
// declassified.
int calendar_overlap(const Calendar<lat::Label_A>& alice_cal, const Calendar<lat::Label_B>& bob_cal);

}  // namespace calendar
