// expect: reject E-ASSIGN-SECRET
// Overwriting a captured Secret directly bypasses the label check on writes.
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

int main() {
  auto low = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 0);
  auto high = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 5);
  secret_block(lat::Label_A) { low = high; };
}
