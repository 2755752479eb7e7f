// expect: reject E-DISPATCH-CALL
// Side-effect-free functions are only callable from secret contexts.
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

[[cocoon::side_effect_free]] int twice(int x) { return x * 2; }

int main() { return twice(3); }
