// expect: reject E-NESTED-BLOCK
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 1);
  secret_block(lat::Label_AB) {
    secret_block(lat::Label_A) { return wrap_secret(unwrap_secret(s)); };
  };
}
