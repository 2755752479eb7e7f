// expect: accept
// A throwing block yields the default-valued secret and execution continues.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include <map>
#include <string>
#include "cocoon_labels.hpp"

int main() {
  std::map<std::string, ::cocoon::Secret<int, lat::Label_A>> scores;
  scores.emplace("mon", ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 11));
  std::string missing = "tue";
  auto writes = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 0);
  auto got = secret_block(lat::Label_A) {
    *unwrap_secret_mut_ref(&writes) += 1;
    int v = *unwrap_secret_ref(::cocoon::lib::option_unwrap(::cocoon::lib::map_get(&scores, &missing)));
    *unwrap_secret_mut_ref(&writes) += 1;
    return wrap_secret(v + 1);
  };
  std::printf("continued after panic\n");
  std::printf("result: %d\n", got.declassify());
  std::printf("writes before panic: %d\n", writes.declassify());
  return 0;
}
