#include "weylkit/summation.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace weylkit {

namespace {
std::atomic<unsigned> g_thread_cap{0};

unsigned effective_threads(std::size_t chunks) {
  unsigned cap = g_thread_cap.load(std::memory_order_relaxed);
  if (cap == 0) cap = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(cap, chunks));
}
}  // namespace

void set_thread_cap(unsigned cap) noexcept { g_thread_cap.store(cap, std::memory_order_relaxed); }

unsigned thread_cap() noexcept { return g_thread_cap.load(std::memory_order_relaxed); }

double ordered_sum(std::size_t begin, std::size_t end,
                   const std::function<double(std::size_t)>& term) {
  if (end <= begin) return 0.0;
  const std::size_t n = end - begin;
  const std::size_t chunks = (n + kReductionChunk - 1) / kReductionChunk;

  std::vector<double> partial(chunks, 0.0);
  auto sum_chunk = [&](std::size_t c) {
    CompensatedSum acc;
    const std::size_t lo = begin + c * kReductionChunk;
    const std::size_t hi = std::min(end, lo + kReductionChunk);
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[c] = acc.value();
  };

  const unsigned workers = effective_threads(chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) sum_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) sum_chunk(c);
      });
    }
  }

  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

}  // namespace weylkit
