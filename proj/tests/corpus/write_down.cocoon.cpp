// expect: reject E-WRITE-DOWN
// Writable access needs the block label to equal the value's label.
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

int main() {
  auto count = ::cocoon::secret_new<lat::Label_AB>(::cocoon::unsafe, 0);
  secret_block(lat::Label_A) { *unwrap_secret_mut_ref(&count) += 1; };
}
