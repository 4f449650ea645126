#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace vconn {

// Runs fn(i) for i in [begin, end) on up to `threads` workers. Work is split
// by index stride, so each i is handled exactly once; exceptions from
// workers are rethrown on the caller (first by index).
template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, std::size_t threads, Fn&& fn) {
  const std::size_t count = end > begin ? end - begin : 0;
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = begin + w; i < end; i += threads) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace vconn
