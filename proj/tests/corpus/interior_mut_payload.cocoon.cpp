// expect: reject E-INTERIOR-MUT
// A Secret must not hold a cell that can change behind the label.
#include <cocoon/cocoon.hpp>
#include <atomic>
#include "cocoon_labels.hpp"


int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, std::atomic<int>{});
  (void)s;
}
