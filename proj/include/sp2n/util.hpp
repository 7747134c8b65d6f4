#ifndef SP2N_UTIL_HPP
#define SP2N_UTIL_HPP

#include <cstdlib>
#include <future>
#include <string>
#include <vector>

namespace sp2n {

/// Worker count from SP2N_WORKERS (default 1, clamped to [1, 256]).
inline int worker_count() {
  const char* env = std::getenv("SP2N_WORKERS");
  if (!env) return 1;
  int w = std::atoi(env);
  if (w < 1) return 1;
  if (w > 256) return 256;
  return w;
}

/// Evaluates fn(0..count-1) and returns results in index order. Results are
/// merged deterministically regardless of the worker count.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<R> out(count);
  const int workers = worker_count();
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::future<void>> futs;
  const std::size_t chunks = std::min<std::size_t>(count, std::size_t(workers));
  for (std::size_t c = 0; c < chunks; ++c) {
    futs.push_back(std::async(std::launch::async, [&, c] {
      for (std::size_t i = c; i < count; i += chunks) out[i] = fn(i);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace sp2n

#endif  // SP2N_UTIL_HPP
