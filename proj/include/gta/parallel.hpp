#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace gta {

// Worker count for parallel_map; 1 runs inline.
void set_threads(int n);
int threads();

// out[i] = fn(i). Results land in index order whatever the schedule; the first
// exception (lowest index) is rethrown.
template <class T, class F>
std::vector<T> parallel_map(int n, F&& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> err(n);
  auto work = [&](int i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      err[i] = std::current_exception();
    }
  };
  const int t = std::min(threads(), n);
  if (t <= 1) {
    for (int i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int k = 0; k < t; ++k)
      pool.emplace_back([&] {
        for (int i; (i = next.fetch_add(1)) < n;) work(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace gta
