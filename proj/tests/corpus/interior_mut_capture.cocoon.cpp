// expect: reject E-INTERIOR-MUT
// Capturing an atomic hands the block a cell it could change through a read-only view.
#include <cocoon/cocoon.hpp>
#include <atomic>
#include "cocoon_labels.hpp"

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 1);
  std::atomic<int> flag{0};
  auto r = secret_block(lat::Label_A) {
    int seen = flag;
    return wrap_secret(unwrap_secret(s) + seen);
  };
  (void)r;
}
