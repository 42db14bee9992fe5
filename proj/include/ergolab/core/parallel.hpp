#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ergolab {

// Parallelism cap from ERGOLAB_THREADS (positive integer). Unset means the
// hardware concurrency. Malformed values throw rather than silently fall back.
inline unsigned thread_cap() {
  const char* raw = std::getenv("ERGOLAB_THREADS");
  if (raw == nullptr || *raw == '\0') {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  std::string s(raw);
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || value == 0 || s.front() == '-' || value > 4096) {
    throw std::invalid_argument("ERGOLAB_THREADS must be a positive integer, got '" + s + "'");
  }
  return static_cast<unsigned>(value);
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Work is split
// by stride, so results written to per-index slots are schedule independent.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ergolab
