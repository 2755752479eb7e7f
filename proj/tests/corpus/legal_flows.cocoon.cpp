// expect: accept
// Positive twins of the negative programs: each construct is allowed in its legal form.
#include <cocoon/cocoon.hpp>
#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>
#include "cocoon_labels.hpp"

struct [[cocoon::derive_isef]] Money {
  long cents;
  int currency;
};

[[cocoon::side_effect_free]] long total_cents(Money m, long fee) { return m.cents + fee; }

template <class L>
[[cocoon::side_effect_free]] int clamp_score(int s, int hi) {
  return ::std::min(::std::max(s, 0), hi);
}

[[cocoon::side_effect_free]] int sum_to(int n) {
  int s = 0;
  for (int i = 1; i <= n; ++i) {
    s += i;
  }
  return s;
}

const int kLimit = 100;

int main() {
  auto a = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 40);
  auto b = ::cocoon::secret_new<lat::Label_B>(::cocoon::unsafe, 2);
  auto wallet = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, Money{250, 1});
  auto name = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, std::string("alice"));
  std::vector<int> weights = {1, 2, 3};

  // Reading down: {a,b} reads {a} and {b}.
  auto sum = secret_block(lat::Label_AB) { return wrap_secret(unwrap_secret(a) + unwrap_secret(b)); };
  // Writing at an equal label.
  secret_block(lat::Label_A) { *unwrap_secret_mut_ref(&a) += kLimit; };
  // Side-effect-free calls, allowlisted calls, ISEF records, loops over captured data.
  auto fee = secret_block(lat::Label_A) {
    long extra = 0;
    for (int w : weights) {
      extra += w;
    }
    return wrap_secret(total_cents(unwrap_secret(wallet), extra) + clamp_score<lat::Label_A>(unwrap_secret(a), 120));
  };
  auto len = secret_block(lat::Label_A) { return wrap_secret(::std::size(unwrap_secret(name)) + sum_to(4)); };
  // Locals declared inside a block may be written freely.
  auto parity = secret_block(lat::Label_A) {
    int n = unwrap_secret(a);
    bool odd = false;
    while (n > 0) {
      odd = !odd;
      n -= 1;
    }
    return wrap_secret(odd);
  };

  std::printf("sum %d\n", sum.declassify());
  std::printf("a %d\n", a.declassify());
  std::printf("fee %ld\n", fee.declassify());
  std::printf("len %zu\n", len.declassify());
  std::printf("odd %d\n", parity.declassify() ? 1 : 0);
}
