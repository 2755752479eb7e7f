// Sieve of Eratosthenes kernel, unlabeled.
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace {

int count_primes(std::vector<char>* flags) {
  const int n = static_cast<int>(std::size(*flags));
  int count = 0;
  for (int i = 2; i < n; ++i) {
    if ((*flags)[i] != 0) {
      count += 1;
      for (long j = static_cast<long>(i) * i; j < n; j += i) {
        (*flags)[j] = 0;
      }
    }
  }
  return count;
}

}  // namespace

double sieve_plain(int n) {
  std::vector<char> flags(static_cast<std::size_t>(n), 1);
  return count_primes(&flags);
}

#ifdef COCOON_BENCH_MAIN
int main(int argc, char** argv) { std::printf("%.0f\n", sieve_plain(argc > 1 ? std::atoi(argv[1]) : 1000)); }
#endif
