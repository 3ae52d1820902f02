#ifndef GYROVP_PARALLEL_HPP
#define GYROVP_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gyrovp {

/// Process-wide worker thread count for the O(N^2) loops. Default 1.
/// Results are bitwise independent of this setting: parallel regions only
/// split independent output elements across threads; every reduction is
/// performed serially in index order afterwards.
void set_worker_threads(int n);
int worker_threads();

namespace detail {

/// Calls body(begin, end) on disjoint chunks of [0, n), possibly concurrently.
/// body must write only to per-index slots. The lowest-chunk exception, if
/// any, is rethrown on the calling thread.
template <typename Body>
void parallel_chunks(std::size_t n, const Body& body) {
  const int workers = worker_threads();
  if (workers <= 1 || n < 64) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, n);
  const std::size_t chunk = (n + nthreads - 1) / nthreads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nthreads);
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, &err = errors[t], begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace detail

}  // namespace gyrovp

#endif  // GYROVP_PARALLEL_HPP
