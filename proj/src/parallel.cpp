#include "flc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace flc {

namespace {
std::atomic<int> g_max_threads{0};

int detect_threads() {
  if (const char* env = std::getenv("FLC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

int max_threads() {
  int n = g_max_threads.load();
  if (n <= 0) {
    n = detect_threads();
    g_max_threads.store(n);
  }
  return n;
}

void set_max_threads(int n) { g_max_threads.store(n > 0 ? n : 1); }

void parallel_chunks(Index n, const std::function<void(Index, Index)>& f) {
  if (n <= 0) return;
  const int workers = std::min<Index>(max_threads(), n);
  if (workers <= 1) {
    f(0, n);
    return;
  }
  const Index chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const Index b = w * chunk;
    const Index e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&f, b, e] { f(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace flc
