#include "fvbench/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace fvbench {

int thread_count() {
  static const int count = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("FVBENCH_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap >= 1) return cap;
      } catch (const std::exception&) {
      }
    }
    return hw;
  }();
  return count;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk, e = std::min(n, b + chunk);
    pool.emplace_back([&, w, b, e] {
      try {
        if (b < e) body(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fvbench
