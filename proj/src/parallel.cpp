#include "maxtype/parallel.hpp"

#include <atomic>

namespace maxtype {

namespace {
std::atomic<unsigned> g_threads{1};
}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1 : n); }

unsigned thread_count() { return g_threads.load(); }

bool& detail::in_worker() {
  thread_local bool flag = false;
  return flag;
}

}  // namespace maxtype
