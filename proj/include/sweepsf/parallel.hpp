// Copyright 2026 The sweepsf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SWEEPSF_PARALLEL_HPP_
#define SWEEPSF_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sweepsf {

/// Worker count for `requested` (0 means hardware concurrency).
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Evaluates fn(index) for index in [0, reps) and returns the results in
/// index order. Work is handed out dynamically; since every replicate seeds
/// itself from its index, the output does not depend on `threads`.
/// The first exception thrown by any replicate is rethrown.
template <typename Fn>
auto run_replicates(std::uint64_t reps, unsigned threads, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{}))> {
  using T = decltype(fn(std::uint64_t{}));
  std::vector<T> out(reps);
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(reps, 1)));
  if (workers <= 1) {
    for (std::uint64_t r = 0; r < reps; ++r) out[r] = fn(r);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::uint64_t r = next.fetch_add(1);
      if (r >= reps) return;
      try {
        out[r] = fn(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(reps);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace sweepsf

#endif  // SWEEPSF_PARALLEL_HPP_
