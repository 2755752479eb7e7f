// expect: accept
// Early exits inside a block leave the block only; the statement after it runs next.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include <vector>
#include "cocoon_labels.hpp"

int main() {
  std::vector<int> xs = {4, 8, 15, 16, 23, 42};
  auto key = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 16);
  for (int round = 0; round < 2; ++round) {
    std::printf("round %d: before\n", round);
    auto pos = secret_block(lat::Label_A) {
      int i = 0;
      for (int x : xs) {
        if (x < 10) {
          i += 1;
          continue;
        }
        if (x == unwrap_secret(key)) {
          return wrap_secret(i);
        }
        i += 1;
      }
      return wrap_secret(-1);
    };
    std::printf("round %d: after, found at %d\n", round, pos.declassify());
  }
  std::printf("done\n");
}
