#include "knotpi/parallel.hpp"

namespace knotpi {

namespace {
std::atomic<unsigned> configured{1};
}

void set_thread_count(unsigned n) { configured = n; }

unsigned thread_count() {
  const unsigned n = configured;
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace knotpi
