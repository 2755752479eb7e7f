// expect: reject E-METHOD-CALL
// Method calls can reach application code; call sites must use free functions.
#include <cocoon/cocoon.hpp>
#include <string>
#include "cocoon_labels.hpp"

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, std::string("hi"));
  auto r = secret_block(lat::Label_A) { return wrap_secret(unwrap_secret(s).size()); };
  (void)r;
}
